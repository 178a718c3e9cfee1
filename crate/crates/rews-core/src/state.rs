//! Sign-vector representation of real equally weighted states.
//!
//! An n-qubit real equally weighted state (REWS) has all amplitudes equal to
//! ±1/√2ⁿ, so it is determined by a sign assignment on the 2ⁿ computational
//! basis states. [`Rews`] packs that assignment as a bit sequence: bit `x` is
//! set exactly when the amplitude of `|x⟩` is negative, equivalently when the
//! generating Boolean function has `f(x) = 1`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Hard cap on representable qubit counts (2^20 sign bits).
pub const MAX_QUBITS: u32 = 20;

/// Cap for analysis operations (factoring, classification sweeps).
pub const MAX_ANALYSIS_QUBITS: u32 = 16;

/// A global ±1 sign carried alongside normalized tensor factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// Sign of the product of two signed quantities.
    pub fn combine(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// An affine Boolean form `f(x) = a·x ⊕ c` with `a·x = a₁x₁ ⊕ … ⊕ aₙxₙ`.
///
/// The mask uses the same bit layout as basis indices: the coefficient for
/// qubit j sits at bit position n − j, so qubit 1 is the most significant bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AffineForm {
    pub mask: u32,
    pub constant: bool,
}

impl AffineForm {
    pub fn new(mask: u32, constant: bool) -> Self {
        AffineForm { mask, constant }
    }

    /// Evaluates `a·x ⊕ c` for a basis index `x`.
    pub fn evaluate(&self, x: u64) -> bool {
        ((u64::from(self.mask) & x).count_ones() & 1 == 1) ^ self.constant
    }

    /// Coefficient a_j for 1-based qubit `j` of an n-qubit form.
    pub fn coefficient(&self, j: u32, n: u32) -> bool {
        debug_assert!(j >= 1 && j <= n);
        (self.mask >> (n - j)) & 1 == 1
    }

    /// Renders the `affine:<n>:<a-bits>:<c>` text form.
    pub fn format_spec(&self, n: u32) -> String {
        let mut bits = String::with_capacity(n as usize);
        for j in 1..=n {
            bits.push(if self.coefficient(j, n) { '1' } else { '0' });
        }
        format!("affine:{}:{}:{}", n, bits, u8::from(self.constant))
    }
}

/// The seven-part classification of REWS by structural degree Δ.
///
/// For an n-qubit state with Δ negative amplitudes:
/// odd Δ is `Odd` (A); Δ ∈ {0, 2ⁿ} is `Constant` (B); Δ = 2ⁿ⁻¹ is
/// `Balanced` (C); the remaining even degrees split on which side of the
/// 2^{n/2} boundary they fall, compared exactly as Δ² against 2ⁿ:
/// `EvenLow` (D) has Δ² < 2ⁿ, `EvenMid` (F) has Δ² ≥ 2ⁿ with Δ < 2ⁿ⁻¹,
/// and `EvenLowMirror` (E) / `EvenMidMirror` (G) are their images under
/// Δ ↦ 2ⁿ − Δ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum StructuralClass {
    #[serde(rename = "A_Odd")]
    Odd,
    #[serde(rename = "B_Constant")]
    Constant,
    #[serde(rename = "C_Balanced")]
    Balanced,
    #[serde(rename = "D_EvenLow")]
    EvenLow,
    #[serde(rename = "E_EvenLowMirror")]
    EvenLowMirror,
    #[serde(rename = "F_EvenMid")]
    EvenMid,
    #[serde(rename = "G_EvenMidMirror")]
    EvenMidMirror,
}

impl StructuralClass {
    pub const ALL: [StructuralClass; 7] = [
        StructuralClass::Odd,
        StructuralClass::Constant,
        StructuralClass::Balanced,
        StructuralClass::EvenLow,
        StructuralClass::EvenLowMirror,
        StructuralClass::EvenMid,
        StructuralClass::EvenMidMirror,
    ];

    pub fn letter(self) -> char {
        match self {
            StructuralClass::Odd => 'A',
            StructuralClass::Constant => 'B',
            StructuralClass::Balanced => 'C',
            StructuralClass::EvenLow => 'D',
            StructuralClass::EvenLowMirror => 'E',
            StructuralClass::EvenMid => 'F',
            StructuralClass::EvenMidMirror => 'G',
        }
    }

    /// Stable tag used in text and JSON output.
    pub fn tag(self) -> &'static str {
        match self {
            StructuralClass::Odd => "A_Odd",
            StructuralClass::Constant => "B_Constant",
            StructuralClass::Balanced => "C_Balanced",
            StructuralClass::EvenLow => "D_EvenLow",
            StructuralClass::EvenLowMirror => "E_EvenLowMirror",
            StructuralClass::EvenMid => "F_EvenMid",
            StructuralClass::EvenMidMirror => "G_EvenMidMirror",
        }
    }

    /// The class of the negated state: D↔E and F↔G swap, A/B/C are fixed.
    pub fn mirrored(self) -> StructuralClass {
        match self {
            StructuralClass::EvenLow => StructuralClass::EvenLowMirror,
            StructuralClass::EvenLowMirror => StructuralClass::EvenLow,
            StructuralClass::EvenMid => StructuralClass::EvenMidMirror,
            StructuralClass::EvenMidMirror => StructuralClass::EvenMid,
            other => other,
        }
    }
}

impl fmt::Display for StructuralClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

fn check_qubit_count(n: u32) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::QubitCount { n, max: MAX_QUBITS });
    }
    Ok(())
}

fn word_count(n: u32) -> usize {
    let bits = 1usize << n;
    bits.div_ceil(64)
}

/// An n-qubit REWS as a packed sign bit sequence.
///
/// Bit `x` (x in `0..2ⁿ`) is set when the amplitude of `|x⟩` is −1/√2ⁿ.
/// Writing x in binary as b₁b₂…bₙ, qubit 1 is the most significant bit b₁.
/// `|ψ⟩` and `−|ψ⟩` are distinct values; equality compares every bit.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rews {
    n: u8,
    words: Vec<u64>,
}

impl Rews {
    /// Builds a state from an explicit sign bit sequence.
    pub fn new(n: u32, bits: &[bool]) -> Result<Self> {
        check_qubit_count(n)?;
        let expected = 1u64 << n;
        if bits.len() as u64 != expected {
            return Err(Error::LengthMismatch {
                n,
                expected,
                actual: bits.len() as u64,
            });
        }
        let mut words = vec![0u64; word_count(n)];
        for (x, &b) in bits.iter().enumerate() {
            if b {
                words[x >> 6] |= 1u64 << (x & 63);
            }
        }
        Ok(Rews { n: n as u8, words })
    }

    /// Builds a state from a '0'/'1' string, leftmost character being x = 0.
    pub fn from_bit_str(n: u32, bits: &str) -> Result<Self> {
        check_qubit_count(n)?;
        let expected = 1u64 << n;
        if bits.len() as u64 != expected {
            return Err(Error::LengthMismatch {
                n,
                expected,
                actual: bits.len() as u64,
            });
        }
        let mut words = vec![0u64; word_count(n)];
        for (x, c) in bits.chars().enumerate() {
            match c {
                '0' => {}
                '1' => words[x >> 6] |= 1u64 << (x & 63),
                other => {
                    return Err(Error::Parse {
                        pos: x,
                        msg: format!("invalid character {other:?}, expected '0' or '1'"),
                    })
                }
            }
        }
        Ok(Rews { n: n as u8, words })
    }

    /// Builds a state by evaluating a Boolean function on every basis index.
    pub fn from_fn(n: u32, f: impl Fn(u64) -> bool) -> Result<Self> {
        check_qubit_count(n)?;
        let mut words = vec![0u64; word_count(n)];
        for x in 0..(1u64 << n) {
            if f(x) {
                words[(x >> 6) as usize] |= 1u64 << (x & 63);
            }
        }
        Ok(Rews { n: n as u8, words })
    }

    /// Builds a small state (n ≤ 6) from a packed sign integer where bit `x`
    /// of `v` has weight 2^x.
    pub fn from_sign_integer(n: u32, v: u64) -> Result<Self> {
        check_qubit_count(n)?;
        if n > 6 {
            return Err(Error::AnalysisLimit {
                what: "packed sign integers",
                n,
                max: 6,
            });
        }
        let mask = if n == 6 { u64::MAX } else { (1u64 << (1 << n)) - 1 };
        Ok(Rews {
            n: n as u8,
            words: vec![v & mask],
        })
    }

    /// The packed sign integer for small states (n ≤ 6).
    pub fn sign_integer(&self) -> Option<u64> {
        if self.n <= 6 {
            Some(self.words[0])
        } else {
            None
        }
    }

    /// ψ₊ⁿ (all signs +, Δ = 0) or ψ₋ⁿ (all signs −, Δ = 2ⁿ).
    pub fn constant(n: u32, sign: Sign) -> Result<Self> {
        check_qubit_count(n)?;
        let mut words = vec![0u64; word_count(n)];
        if sign.is_minus() {
            for w in &mut words {
                *w = u64::MAX;
            }
            mask_tail(&mut words, n);
        }
        Ok(Rews { n: n as u8, words })
    }

    /// State generated by the affine function `a·x ⊕ c`.
    ///
    /// The result is constant when `a = 0` and balanced otherwise; either way
    /// it is fully separable.
    pub fn from_affine(n: u32, form: &AffineForm) -> Result<Self> {
        check_qubit_count(n)?;
        if u64::from(form.mask) >= (1u64 << n) {
            return Err(Error::AffineMask { mask: form.mask, n });
        }
        Self::from_fn(n, |x| form.evaluate(x))
    }

    /// Grover-style marked state: a single −1 amplitude at basis index `x`.
    pub fn grover_mark(n: u32, x: u64) -> Result<Self> {
        check_qubit_count(n)?;
        if x >= (1u64 << n) {
            return Err(Error::LengthMismatch {
                n,
                expected: 1u64 << n,
                actual: x,
            });
        }
        let mut words = vec![0u64; word_count(n)];
        words[(x >> 6) as usize] |= 1u64 << (x & 63);
        Ok(Rews { n: n as u8, words })
    }

    pub fn n(&self) -> u32 {
        u32::from(self.n)
    }

    /// Number of amplitudes, 2ⁿ.
    pub fn len(&self) -> u64 {
        1u64 << self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Sign bit at basis index `x`: true means amplitude −1/√2ⁿ.
    pub fn bit(&self, x: u64) -> bool {
        debug_assert!(x < self.len());
        (self.words[(x >> 6) as usize] >> (x & 63)) & 1 == 1
    }

    /// Structural degree Δ: the number of negative amplitudes.
    pub fn structural_degree(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    /// The state −|ψ⟩: every sign flipped, so Δ(−ψ) = 2ⁿ − Δ(ψ).
    pub fn negate(&self) -> Rews {
        let mut words: Vec<u64> = self.words.iter().map(|w| !w).collect();
        mask_tail(&mut words, self.n());
        Rews {
            n: self.n,
            words,
        }
    }

    pub fn is_constant(&self) -> bool {
        let d = self.structural_degree();
        d == 0 || d == self.len()
    }

    pub fn is_balanced(&self) -> bool {
        self.structural_degree() * 2 == self.len()
    }

    pub fn is_odd(&self) -> bool {
        self.structural_degree() & 1 == 1
    }

    /// Tensor product with `self` on the high-significance qubits.
    ///
    /// Qubits 1..=self.n of the result come from `self`, the rest from `lo`;
    /// the sign at `x_hi·2^{lo.n} + x_lo` is the product of the factor signs.
    pub fn tensor(&self, lo: &Rews) -> Result<Rews> {
        let n = self.n() + lo.n();
        if n > MAX_QUBITS {
            return Err(Error::QubitCount { n, max: MAX_QUBITS });
        }
        let lo_bits = lo.n();
        let lo_mask = (1u64 << lo_bits) - 1;
        Rews::from_fn(n, |x| self.bit(x >> lo_bits) ^ lo.bit(x & lo_mask))
    }

    /// Classifies the state into one of the seven structural parts.
    pub fn classify(&self) -> StructuralClass {
        let full = self.len();
        let d = self.structural_degree();
        if d & 1 == 1 {
            StructuralClass::Odd
        } else if d == 0 || d == full {
            StructuralClass::Constant
        } else if d * 2 == full {
            StructuralClass::Balanced
        } else if d * 2 < full {
            // boundary 2^{n/2} compared exactly as Δ² against 2ⁿ
            if d * d < full {
                StructuralClass::EvenLow
            } else {
                StructuralClass::EvenMid
            }
        } else {
            let m = full - d;
            if m * m < full {
                StructuralClass::EvenLowMirror
            } else {
                StructuralClass::EvenMidMirror
            }
        }
    }

    /// Recovers `(a, c)` when the generating function is affine, i.e.
    /// `f(x) = a·x ⊕ c` for every x.
    ///
    /// The candidate is read off from f(0) and the unit vectors, then checked
    /// against the full truth table; `None` means the state is not affine and
    /// hence (by exactness of the check) not fully separable.
    pub fn affine_form(&self) -> Option<AffineForm> {
        let n = self.n();
        let constant = self.bit(0);
        let mut mask = 0u32;
        for j in 1..=n {
            let unit = 1u64 << (n - j);
            if self.bit(unit) ^ constant {
                mask |= 1 << (n - j);
            }
        }
        let form = AffineForm::new(mask, constant);
        for x in 0..self.len() {
            if self.bit(x) != form.evaluate(x) {
                return None;
            }
        }
        Some(form)
    }

    /// Relabels qubits: the output's qubit `perm[j-1]` carries input qubit j.
    ///
    /// Δ and the structural class are invariant under any permutation.
    pub fn permute_qubits(&self, perm: &[u32]) -> Result<Rews> {
        let n = self.n();
        if perm.len() != n as usize {
            return Err(Error::InvalidPermutation {
                detail: format!("expected {} entries, got {}", n, perm.len()),
            });
        }
        let mut seen = vec![false; n as usize];
        for &p in perm {
            if p == 0 || p > n {
                return Err(Error::InvalidPermutation {
                    detail: format!("qubit {p} out of range 1..={n}"),
                });
            }
            if seen[(p - 1) as usize] {
                return Err(Error::InvalidPermutation {
                    detail: format!("qubit {p} appears twice"),
                });
            }
            seen[(p - 1) as usize] = true;
        }
        let mut words = vec![0u64; word_count(n)];
        for x in 0..self.len() {
            if self.bit(x) {
                let mut y = 0u64;
                for j in 1..=n {
                    if (x >> (n - j)) & 1 == 1 {
                        y |= 1u64 << (n - perm[(j - 1) as usize]);
                    }
                }
                words[(y >> 6) as usize] |= 1u64 << (y & 63);
            }
        }
        Ok(Rews { n: self.n, words })
    }

    /// Canonical `<n>:<bitstring>` rendering, leftmost bit being x = 0.
    pub fn to_bit_string(&self) -> String {
        let mut s = String::with_capacity(self.len() as usize);
        for x in 0..self.len() {
            s.push(if self.bit(x) { '1' } else { '0' });
        }
        s
    }

    /// Hex rendering (n ≥ 2): big-endian, 4 bits per digit, leftmost bit x = 0.
    pub fn to_hex_string(&self) -> Option<String> {
        if self.n < 2 {
            return None;
        }
        let mut s = String::with_capacity((self.len() / 4) as usize);
        for g in 0..(self.len() / 4) {
            let mut digit = 0u8;
            for t in 0..4u64 {
                if self.bit(4 * g + t) {
                    digit |= 1 << (3 - t);
                }
            }
            s.push(char::from_digit(u32::from(digit), 16).unwrap());
        }
        Some(s)
    }

    /// Parses `<n>:<bits>`, `<n>:0x<hex>`, or `affine:<n>:<a-bits>:<c>`.
    pub fn parse(text: &str) -> Result<Self> {
        if let Some(rest) = text.strip_prefix("affine:") {
            return parse_affine(rest, "affine:".len());
        }
        let colon = text.find(':').ok_or_else(|| Error::Parse {
            pos: text.len(),
            msg: "expected ':' after the qubit count".into(),
        })?;
        let n = parse_qubit_count(&text[..colon], 0)?;
        let payload = &text[colon + 1..];
        let offset = colon + 1;
        if let Some(hex) = payload.strip_prefix("0x") {
            parse_hex_body(n, hex, offset + 2)
        } else {
            parse_bits_body(n, payload, offset)
        }
    }
}

fn mask_tail(words: &mut [u64], n: u32) {
    if n < 6 {
        words[0] &= (1u64 << (1u64 << n)) - 1;
    }
}

fn parse_qubit_count(text: &str, offset: usize) -> Result<u32> {
    if text.is_empty() {
        return Err(Error::Parse {
            pos: offset,
            msg: "missing qubit count".into(),
        });
    }
    for (i, c) in text.chars().enumerate() {
        if !c.is_ascii_digit() {
            return Err(Error::Parse {
                pos: offset + i,
                msg: format!("invalid character {c:?} in qubit count"),
            });
        }
    }
    let n: u32 = text.parse().map_err(|_| Error::Parse {
        pos: offset,
        msg: format!("qubit count {text:?} is too large"),
    })?;
    check_qubit_count(n)?;
    Ok(n)
}

fn parse_bits_body(n: u32, bits: &str, offset: usize) -> Result<Rews> {
    match Rews::from_bit_str(n, bits) {
        Err(Error::Parse { pos, msg }) => Err(Error::Parse {
            pos: pos + offset,
            msg,
        }),
        other => other,
    }
}

fn parse_hex_body(n: u32, hex: &str, offset: usize) -> Result<Rews> {
    if n < 2 {
        return Err(Error::Parse {
            pos: offset,
            msg: "hex form needs at least 2 qubits (whole hex digits)".into(),
        });
    }
    let expected = (1u64 << n) / 4;
    if hex.len() as u64 != expected {
        return Err(Error::LengthMismatch {
            n,
            expected,
            actual: hex.len() as u64,
        });
    }
    let mut bits = vec![false; 1usize << n];
    for (g, c) in hex.chars().enumerate() {
        let digit = c.to_digit(16).ok_or_else(|| Error::Parse {
            pos: offset + g,
            msg: format!("invalid hex digit {c:?}"),
        })? as u8;
        for t in 0..4usize {
            bits[4 * g + t] = (digit >> (3 - t)) & 1 == 1;
        }
    }
    Rews::new(n, &bits)
}

fn parse_affine(rest: &str, offset: usize) -> Result<Rews> {
    let parts: Vec<&str> = rest.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::Parse {
            pos: offset,
            msg: "affine form is affine:<n>:<a-bits>:<c>".into(),
        });
    }
    let n = parse_qubit_count(parts[0], offset)?;
    let abits_offset = offset + parts[0].len() + 1;
    if parts[1].len() as u64 != u64::from(n) {
        return Err(Error::Parse {
            pos: abits_offset,
            msg: format!("affine mask needs {} bits, got {}", n, parts[1].len()),
        });
    }
    let mut mask = 0u32;
    for (i, c) in parts[1].chars().enumerate() {
        match c {
            '0' => {}
            '1' => mask |= 1 << (n as usize - 1 - i),
            other => {
                return Err(Error::Parse {
                    pos: abits_offset + i,
                    msg: format!("invalid character {other:?} in affine mask"),
                })
            }
        }
    }
    let c_offset = abits_offset + parts[1].len() + 1;
    let constant = match parts[2] {
        "0" => false,
        "1" => true,
        other => {
            return Err(Error::Parse {
                pos: c_offset,
                msg: format!("affine constant must be 0 or 1, got {other:?}"),
            })
        }
    };
    Rews::from_affine(n, &AffineForm::new(mask, constant))
}

impl fmt::Display for Rews {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.n, self.to_bit_string())
    }
}

impl fmt::Debug for Rews {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rews({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(text: &str) -> Rews {
        Rews::parse(text).unwrap()
    }

    #[test]
    fn new_from_bits() {
        let all_plus = Rews::from_bit_str(2, "0000").unwrap();
        assert_eq!(all_plus, Rews::constant(2, Sign::Plus).unwrap());

        let xor = Rews::from_bit_str(2, "0110").unwrap();
        assert_eq!(xor, Rews::from_affine(2, &AffineForm::new(0b11, false)).unwrap());

        let err = Rews::from_bit_str(2, "011").unwrap_err();
        assert_eq!(
            err,
            Error::LengthMismatch {
                n: 2,
                expected: 4,
                actual: 3
            }
        );
    }

    #[test]
    fn qubit_count_bounds() {
        assert!(matches!(
            Rews::constant(0, Sign::Plus),
            Err(Error::QubitCount { n: 0, .. })
        ));
        assert!(matches!(
            Rews::constant(21, Sign::Plus),
            Err(Error::QubitCount { n: 21, .. })
        ));
        assert!(Rews::constant(20, Sign::Plus).is_ok());
    }

    #[test]
    fn constant_states() {
        let plus = Rews::constant(3, Sign::Plus).unwrap();
        assert_eq!(plus.to_bit_string(), "00000000");
        assert_eq!(plus.structural_degree(), 0);

        let minus = Rews::constant(3, Sign::Minus).unwrap();
        assert_eq!(minus.to_bit_string(), "11111111");
        assert_eq!(minus.structural_degree(), 8);

        assert_eq!(Rews::constant(1, Sign::Plus).unwrap().to_bit_string(), "00");
    }

    #[test]
    fn affine_construction() {
        assert_eq!(
            Rews::from_affine(2, &AffineForm::new(0b11, false)).unwrap(),
            r("2:0110")
        );
        assert_eq!(
            Rews::from_affine(4, &AffineForm::new(0, false)).unwrap(),
            Rews::constant(4, Sign::Plus).unwrap()
        );
        assert_eq!(
            Rews::from_affine(1, &AffineForm::new(1, true)).unwrap(),
            r("1:10")
        );
        assert!(matches!(
            Rews::from_affine(2, &AffineForm::new(0b100, false)),
            Err(Error::AffineMask { .. })
        ));
    }

    #[test]
    fn structural_degree_counts_minus_signs() {
        assert_eq!(r("2:0000").structural_degree(), 0);
        assert_eq!(r("2:0110").structural_degree(), 2);
        assert_eq!(r("3:10000111").structural_degree(), 4);
    }

    #[test]
    fn negate_flips_every_sign() {
        let s = r("3:10000000");
        assert_eq!(s.structural_degree(), 1);
        let neg = s.negate();
        assert_eq!(neg.to_bit_string(), "01111111");
        assert_eq!(neg.structural_degree(), 7);
        assert_eq!(neg.negate(), s);
        assert_eq!(
            Rews::constant(5, Sign::Plus).unwrap().negate(),
            Rews::constant(5, Sign::Minus).unwrap()
        );
    }

    #[test]
    fn tensor_composes_signs() {
        let hi = r("1:01");
        let lo = r("2:1000");
        let t = hi.tensor(&lo).unwrap();
        assert_eq!(t, r("3:10000111"));
        // Eq-16 style composition: (2-1)*1 + (4-1)*1 = 4
        assert_eq!(t.structural_degree(), 4);

        let id = Rews::constant(1, Sign::Plus).unwrap();
        let rr = r("2:1011");
        assert_eq!(id.tensor(&rr).unwrap().to_bit_string(), "10111011");

        // sign cancellation: a ⊗ b = (−a) ⊗ (−b)
        assert_eq!(
            hi.tensor(&lo).unwrap(),
            hi.negate().tensor(&lo.negate()).unwrap()
        );
    }

    #[test]
    fn tensor_rejects_oversized_results() {
        let a = Rews::constant(12, Sign::Plus).unwrap();
        let b = Rews::constant(9, Sign::Plus).unwrap();
        assert!(matches!(a.tensor(&b), Err(Error::QubitCount { n: 21, .. })));
    }

    #[test]
    fn classify_small_cases() {
        // n = 2: only A, B, C are inhabited
        assert_eq!(r("2:1000").classify(), StructuralClass::Odd);
        assert_eq!(r("2:0110").classify(), StructuralClass::Balanced);
        for v in 0..16u64 {
            let c = Rews::from_sign_integer(2, v).unwrap().classify();
            assert!(matches!(
                c,
                StructuralClass::Odd | StructuralClass::Constant | StructuralClass::Balanced
            ));
        }
        // n = 3: D and E appear, F and G still empty
        assert_eq!(r("3:11000000").classify(), StructuralClass::EvenLow);
        assert_eq!(r("3:00111111").classify(), StructuralClass::EvenLowMirror);
        for v in 0..256u64 {
            let c = Rews::from_sign_integer(3, v).unwrap().classify();
            assert!(c != StructuralClass::EvenMid && c != StructuralClass::EvenMidMirror);
        }
    }

    #[test]
    fn classify_n4_boundaries() {
        let by_delta = |d: usize| {
            let bits: Vec<bool> = (0..16).map(|x| x < d).collect();
            Rews::new(4, &bits).unwrap().classify()
        };
        assert_eq!(by_delta(2), StructuralClass::EvenLow);
        assert_eq!(by_delta(4), StructuralClass::EvenMid); // 16 >= 16
        assert_eq!(by_delta(6), StructuralClass::EvenMid);
        assert_eq!(by_delta(8), StructuralClass::Balanced);
        assert_eq!(by_delta(10), StructuralClass::EvenMidMirror);
        assert_eq!(by_delta(12), StructuralClass::EvenMidMirror);
        assert_eq!(by_delta(14), StructuralClass::EvenLowMirror);
    }

    #[test]
    fn classify_is_total_partition() {
        // each Δ lands in exactly one class, and negation mirrors it
        for n in 1..=6u32 {
            let full = 1u64 << n;
            for d in 0..=full {
                let bits: Vec<bool> = (0..full).map(|x| x < d).collect();
                let s = Rews::new(n, &bits).unwrap();
                let c = s.classify();
                assert_eq!(s.negate().classify(), c.mirrored(), "n={n} d={d}");
            }
        }
    }

    #[test]
    fn affine_detection() {
        assert_eq!(r("2:0110").affine_form(), Some(AffineForm::new(0b11, false)));
        assert_eq!(r("2:1001").affine_form(), Some(AffineForm::new(0b11, true)));
        assert_eq!(r("2:0100").affine_form(), None);
    }

    #[test]
    fn affine_roundtrip_all_forms() {
        for n in 1..=6u32 {
            for mask in 0..(1u32 << n) {
                for c in [false, true] {
                    let form = AffineForm::new(mask, c);
                    let s = Rews::from_affine(n, &form).unwrap();
                    assert_eq!(s.affine_form(), Some(form), "n={n} a={mask:b} c={c}");
                    let d = s.structural_degree();
                    if mask == 0 {
                        assert!(d == 0 || d == s.len());
                    } else {
                        assert_eq!(d, s.len() / 2);
                    }
                }
            }
        }
    }

    #[test]
    fn permute_swaps_qubits() {
        let s = r("2:0011"); // |−⟩ ⊗ |+⟩
        assert_eq!(s.permute_qubits(&[2, 1]).unwrap(), r("2:0101"));
        assert_eq!(s.permute_qubits(&[1, 2]).unwrap(), s);
        assert!(matches!(
            s.permute_qubits(&[1, 1]),
            Err(Error::InvalidPermutation { .. })
        ));
        assert!(matches!(
            s.permute_qubits(&[1]),
            Err(Error::InvalidPermutation { .. })
        ));
    }

    #[test]
    fn permute_preserves_degree_and_class() {
        let s = r("3:10110100");
        for perm in [[1, 2, 3], [2, 3, 1], [3, 1, 2], [2, 1, 3]] {
            let p = s.permute_qubits(&perm).unwrap();
            assert_eq!(p.structural_degree(), s.structural_degree());
            assert_eq!(p.classify(), s.classify());
        }
    }

    #[test]
    fn parse_and_format() {
        let s = r("3:10000111");
        assert_eq!(s.to_string(), "3:10000111");
        assert_eq!(s.n(), 3);
        assert_eq!(s.structural_degree(), 4);

        assert_eq!(Rews::parse("3:0x87").unwrap(), s);
        assert_eq!(s.to_hex_string().unwrap(), "87");

        assert_eq!(Rews::parse("affine:2:11:0").unwrap(), r("2:0110"));
    }

    #[test]
    fn parse_errors_carry_positions() {
        match Rews::parse("2:011") {
            Err(Error::LengthMismatch {
                n: 2,
                expected: 4,
                actual: 3,
            }) => {}
            other => panic!("unexpected: {other:?}"),
        }
        match Rews::parse("2:01x0") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("unexpected: {other:?}"),
        }
        match Rews::parse("2q:0110") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 1),
            other => panic!("unexpected: {other:?}"),
        }
        assert!(Rews::parse("1:0xf").is_err());
        assert!(Rews::parse("affine:2:11").is_err());
        assert!(matches!(
            Rews::parse("0:"),
            Err(Error::QubitCount { n: 0, .. })
        ));
    }

    #[test]
    fn hex_round_trips_at_n4() {
        for v in [0u64, 1, 0x8000, 0xbeef, 0xffff] {
            let s = Rews::from_sign_integer(4, v).unwrap();
            let hex = format!("4:0x{}", s.to_hex_string().unwrap());
            assert_eq!(Rews::parse(&hex).unwrap(), s);
        }
    }

    #[test]
    fn grover_mark_is_a_single_minus() {
        let s = Rews::grover_mark(3, 5).unwrap();
        assert_eq!(s.to_bit_string(), "00000100");
        assert_eq!(s.structural_degree(), 1);
        assert!(Rews::grover_mark(3, 8).is_err());
    }
}
