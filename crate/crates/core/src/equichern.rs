//! Arithmetic in `H^*(B Z/m) = Z[x]/(mx)` and in the equivariant cohomology
//! ring `Z[x, h]/(mx, h² + xh)` of `P¹` with the rotation action: top Chern
//! classes of twisted bundles, the unit criterion for Gysin maps, and the two
//! Gysin maps of the fixed points of `P¹`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::abgroup::FinAbGroup;
use crate::error::{Error, Result};
use crate::intlinalg::{is_injective_mod, IntMatrix};

fn check_modulus(m: u64) -> Result<()> {
    if m < 2 {
        return Err(Error::InvalidGroupOrder { m, min: 2 });
    }
    Ok(())
}

fn residue(c: &BigInt, m: u64) -> u64 {
    c.mod_floor(&BigInt::from(m)).to_u64().expect("residue below modulus")
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    let mut b = base % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// An element `c0 + Σ_{k≥1} a_k x^k` of `Z[x]/(mx)`.
///
/// `c0` is an integer (`H^0(BG) = Z`); higher coefficients live in `[0, m)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BgPolynomial {
    m: u64,
    c0: BigInt,
    higher: Vec<u64>,
}

impl BgPolynomial {
    /// `higher[k - 1]` is the coefficient of `x^k`; entries are reduced mod `m`.
    pub fn new(m: u64, c0: impl Into<BigInt>, higher: &[i64]) -> Result<Self> {
        check_modulus(m)?;
        let mut higher: Vec<u64> = higher.iter().map(|&c| residue(&BigInt::from(c), m)).collect();
        trim(&mut higher);
        Ok(Self {
            m,
            c0: c0.into(),
            higher,
        })
    }

    pub fn constant(m: u64, c: impl Into<BigInt>) -> Result<Self> {
        Self::new(m, c, &[])
    }

    /// The generator `x = c₁(ρ)`.
    pub fn x(m: u64) -> Result<Self> {
        Self::new(m, 0, &[1])
    }

    /// `coeff · x^k`.
    pub fn monomial(m: u64, coeff: i64, k: usize) -> Result<Self> {
        if k == 0 {
            return Self::constant(m, coeff);
        }
        let mut higher = vec![0; k];
        higher[k - 1] = coeff;
        Self::new(m, 0, &higher)
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn constant_term(&self) -> &BigInt {
        &self.c0
    }

    /// Coefficient of `x^k` for `k ≥ 1`, as a residue.
    pub fn coefficient(&self, k: usize) -> u64 {
        assert!(k >= 1, "use constant_term for x^0");
        self.higher.get(k - 1).copied().unwrap_or(0)
    }

    /// Highest power of `x` with a nonzero coefficient; `None` for zero.
    pub fn x_degree(&self) -> Option<usize> {
        if !self.higher.is_empty() {
            Some(self.higher.len())
        } else if !self.c0.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.higher.is_empty()
    }

    /// `p(-x)`, the effect of the conjugate character.
    pub fn substitute_neg_x(&self) -> Self {
        let m = self.m;
        let mut higher: Vec<u64> = self
            .higher
            .iter()
            .enumerate()
            .map(|(i, &c)| if (i + 1) % 2 == 1 { (m - c) % m } else { c })
            .collect();
        trim(&mut higher);
        Self {
            m,
            c0: self.c0.clone(),
            higher,
        }
    }

    /// Parses `3 + 2x + x^2`-style input.
    pub fn parse(m: u64, s: &str) -> Result<Self> {
        check_modulus(m)?;
        let mut c0 = BigInt::zero();
        let mut higher: Vec<BigInt> = Vec::new();
        for (coeff, k, e) in parse_terms(s)? {
            if e != 0 {
                return Err(Error::Parse(format!("h is not allowed in a BG class: {s:?}")));
            }
            if k == 0 {
                c0 += coeff;
            } else {
                if higher.len() < k {
                    higher.resize(k, BigInt::zero());
                }
                higher[k - 1] += coeff;
            }
        }
        let mut higher: Vec<u64> = higher.iter().map(|c| residue(c, m)).collect();
        trim(&mut higher);
        Ok(Self { m, c0, higher })
    }
}

fn format_term(out: &mut Vec<String>, coeff: &BigInt, monomial: &str) {
    if coeff.is_zero() {
        return;
    }
    let body = if monomial.is_empty() {
        coeff.abs().to_string()
    } else if coeff.abs().is_one() {
        monomial.to_string()
    } else {
        format!("{}{monomial}", coeff.abs())
    };
    let neg = coeff.is_negative();
    if out.is_empty() {
        out.push(if neg { format!("-{body}") } else { body });
    } else {
        out.push(if neg { format!("- {body}") } else { format!("+ {body}") });
    }
}

fn x_power(k: usize) -> String {
    match k {
        0 => String::new(),
        1 => "x".into(),
        k => format!("x^{k}"),
    }
}

impl fmt::Display for BgPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        format_term(&mut parts, &self.c0, "");
        for (i, c) in self.higher.iter().enumerate() {
            format_term(&mut parts, &BigInt::from(*c), &x_power(i + 1));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// Splits `a + b x^k h - ...` into `(coefficient, power of x, power of h)`.
fn parse_terms(s: &str) -> Result<Vec<(BigInt, usize, usize)>> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut terms = Vec::new();
    let mut start = 0;
    let bytes = compact.as_bytes();
    for i in 1..=bytes.len() {
        if i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^') {
            terms.push(&compact[start..i]);
            start = i;
        }
    }
    terms
        .into_iter()
        .map(|t| parse_term(t).ok_or_else(|| Error::Parse(format!("bad term {t:?} in {s:?}"))))
        .collect()
}

fn parse_term(t: &str) -> Option<(BigInt, usize, usize)> {
    let (sign, rest) = match t.as_bytes().first()? {
        b'+' => (1, &t[1..]),
        b'-' => (-1, &t[1..]),
        _ => (1, t),
    };
    let digits = rest.chars().take_while(char::is_ascii_digit).count();
    let (num, mut mono) = rest.split_at(digits);
    let coeff: BigInt = if num.is_empty() {
        if mono.is_empty() {
            return None;
        }
        BigInt::one()
    } else {
        num.parse().ok()?
    };
    if mono == "0" {
        return None;
    }
    let mut k = 0;
    if let Some(after) = mono.strip_prefix('x') {
        mono = after;
        k = 1;
        if let Some(after) = mono.strip_prefix('^') {
            let d = after.chars().take_while(char::is_ascii_digit).count();
            if d == 0 {
                return None;
            }
            k = after[..d].parse().ok()?;
            mono = &after[d..];
        }
    }
    let e = match mono {
        "" => 0,
        "h" => 1,
        "h^2" => 2,
        _ => return None,
    };
    if k == 0 && mono.is_empty() && num.is_empty() {
        return None;
    }
    Some((coeff * sign, k, e))
}

/// Product in `Z[x]/(mx)`.
pub fn bg_mul(p: &BgPolynomial, q: &BgPolynomial) -> Result<BgPolynomial> {
    if p.m != q.m {
        return Err(Error::ModulusMismatch {
            left: p.m,
            right: q.m,
        });
    }
    let m = p.m;
    let coeffs = |a: &BgPolynomial| -> Vec<u64> {
        std::iter::once(residue(&a.c0, m)).chain(a.higher.iter().copied()).collect()
    };
    let (pc, qc) = (coeffs(p), coeffs(q));
    let len = (pc.len() + qc.len()).saturating_sub(1);
    let mut higher = vec![0u64; len.saturating_sub(1)];
    for (i, &a) in pc.iter().enumerate() {
        for (j, &b) in qc.iter().enumerate() {
            if i + j >= 1 {
                let slot = &mut higher[i + j - 1];
                *slot = (*slot + mul_mod(a, b, m)) % m;
            }
        }
    }
    trim(&mut higher);
    Ok(BgPolynomial {
        m,
        c0: &p.c0 * &q.c0,
        higher,
    })
}

/// `c₁(ρ^{⊗j})^k = (jx)^k`.
pub fn c1_power_character(m: u64, j: i64, k: usize) -> Result<BgPolynomial> {
    if k == 0 {
        return BgPolynomial::constant(m, 1);
    }
    check_modulus(m)?;
    let c = pow_mod(residue(&BigInt::from(j), m), k as u64, m);
    BgPolynomial::monomial(m, c as i64, k)
}

/// Top Chern class `Σ_i c_i (jx)^{n-i}` of `E ⊗ ρ^{⊗j}` for a rank-`n` bundle
/// `E` on a space with trivial action, given `c = [1, c₁, …, c_n]`.
///
/// The `c_i` are integer stand-ins for classes of the base; `c_n` is the
/// constant term.
pub fn top_chern_tensor_character(chern: &[i64], j: i64, m: u64) -> Result<BgPolynomial> {
    check_modulus(m)?;
    match chern.first() {
        Some(1) => {}
        Some(c) => return Err(Error::InvalidChernVector(format!("c0 must be 1, got {c}"))),
        None => return Err(Error::InvalidChernVector("empty Chern vector".into())),
    }
    let n = chern.len() - 1;
    let jr = residue(&BigInt::from(j), m);
    let mut higher = vec![0i64; n];
    for (i, &c) in chern.iter().enumerate().take(n) {
        let k = n - i;
        let ci = residue(&BigInt::from(c), m);
        higher[k - 1] = mul_mod(ci, pow_mod(jr, k as u64, m), m) as i64;
    }
    BgPolynomial::new(m, chern[n], &higher)
}

/// Ranks `n_j` of the isotypic pieces `E_j ⊗ ρ^{⊗j}`, `j = 0..m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotypicRanks {
    m: u64,
    ranks: Vec<u64>,
}

impl IsotypicRanks {
    /// Missing trailing ranks are zero.
    pub fn new(m: u64, ranks: &[u64]) -> Result<Self> {
        check_modulus(m)?;
        if ranks.len() as u64 > m {
            return Err(Error::DimensionMismatch(format!(
                "{} isotypic ranks for a group of order {m}",
                ranks.len()
            )));
        }
        let mut ranks = ranks.to_vec();
        ranks.resize(m as usize, 0);
        Ok(Self { m, ranks })
    }

    /// Convenience: `(weight, rank)` pairs, weights taken mod `m`.
    pub fn from_weights(m: u64, weights: &[(i64, u64)]) -> Result<Self> {
        check_modulus(m)?;
        let mut ranks = vec![0u64; m as usize];
        for &(j, n) in weights {
            ranks[residue(&BigInt::from(j), m) as usize] += n;
        }
        Ok(Self { m, ranks })
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn ranks(&self) -> &[u64] {
        &self.ranks
    }

    pub fn total_rank(&self) -> u64 {
        self.ranks.iter().sum()
    }
}

/// `∏_j j^{n_j} mod m`, with `0^0 = 1`.
pub fn top_chern_leading_coefficient(r: &IsotypicRanks) -> u64 {
    r.ranks
        .iter()
        .enumerate()
        .fold(1 % r.m, |acc, (j, &n)| mul_mod(acc, pow_mod(j as u64, n, r.m), r.m))
}

/// Whether the top Chern class of the normal bundle has a unit leading coefficient.
pub fn gysin_unit_check(r: &IsotypicRanks) -> bool {
    top_chern_leading_coefficient(r).gcd(&r.m) == 1
}

/// Top Chern class of `⊕_j E_j ⊗ ρ^{⊗j}` as the product of the pieces' top
/// classes; each piece is `(j, [1, c₁(E_j), …])`.
pub fn top_chern_isotypic(m: u64, pieces: &[(i64, Vec<i64>)]) -> Result<BgPolynomial> {
    pieces.iter().try_fold(BgPolynomial::constant(m, 1)?, |acc, (j, chern)| {
        bg_mul(&acc, &top_chern_tensor_character(chern, *j, m)?)
    })
}

/// An element of `Z[x, h]/(mx, h² + xh)`:
/// `a0 + b1·h + Σ_{k≥1} (p_k x^k + q_k x^k h)` with `p_k, q_k ∈ [0, m)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct P1RingElement {
    m: u64,
    a0: BigInt,
    b1: BigInt,
    xk: Vec<u64>,
    xkh: Vec<u64>,
}

impl P1RingElement {
    pub fn zero(m: u64) -> Result<Self> {
        check_modulus(m)?;
        Ok(Self {
            m,
            a0: BigInt::zero(),
            b1: BigInt::zero(),
            xk: Vec::new(),
            xkh: Vec::new(),
        })
    }

    /// Sums terms `coeff · x^k h^e`, rewriting `h² = -xh`.
    fn from_terms(m: u64, terms: impl IntoIterator<Item = (BigInt, usize, usize)>) -> Result<Self> {
        let mut out = Self::zero(m)?;
        let mut xk: Vec<BigInt> = Vec::new();
        let mut xkh: Vec<BigInt> = Vec::new();
        let push = |v: &mut Vec<BigInt>, k: usize, c: BigInt| {
            if v.len() < k {
                v.resize(k, BigInt::zero());
            }
            v[k - 1] += c;
        };
        for (c, k, e) in terms {
            let (c, k, e) = match e {
                0 | 1 => (c, k, e),
                2 => (-c, k + 1, 1),
                _ => unreachable!("products of at most two linear h-terms"),
            };
            match (k, e) {
                (0, 0) => out.a0 += c,
                (0, 1) => out.b1 += c,
                (k, 0) => push(&mut xk, k, c),
                (k, _) => push(&mut xkh, k, c),
            }
        }
        out.xk = xk.iter().map(|c| residue(c, m)).collect();
        out.xkh = xkh.iter().map(|c| residue(c, m)).collect();
        trim(&mut out.xk);
        trim(&mut out.xkh);
        Ok(out)
    }

    fn terms(&self) -> Vec<(BigInt, usize, usize)> {
        let mut t = vec![(self.a0.clone(), 0, 0), (self.b1.clone(), 0, 1)];
        t.extend(self.xk.iter().enumerate().map(|(i, &c)| (BigInt::from(c), i + 1, 0)));
        t.extend(self.xkh.iter().enumerate().map(|(i, &c)| (BigInt::from(c), i + 1, 1)));
        t.retain(|(c, _, _)| !c.is_zero());
        t
    }

    pub fn one(m: u64) -> Result<Self> {
        Self::from_terms(m, [(BigInt::one(), 0, 0)])
    }

    pub fn h(m: u64) -> Result<Self> {
        Self::from_terms(m, [(BigInt::one(), 0, 1)])
    }

    pub fn x(m: u64) -> Result<Self> {
        Self::from_terms(m, [(BigInt::one(), 1, 0)])
    }

    /// `coeff · x^k h^e` with `e ≤ 1`.
    pub fn monomial(m: u64, coeff: i64, k: usize, e: usize) -> Result<Self> {
        assert!(e <= 1, "reduce h powers with p1_mul");
        Self::from_terms(m, [(BigInt::from(coeff), k, e)])
    }

    /// Image of a BG class under `x ↦ x`.
    pub fn from_bg(class: &BgPolynomial) -> Result<Self> {
        let mut terms = vec![(class.c0.clone(), 0, 0)];
        terms.extend(class.higher.iter().enumerate().map(|(i, &c)| (BigInt::from(c), i + 1, 0)));
        Self::from_terms(class.m, terms)
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn constant_term(&self) -> &BigInt {
        &self.a0
    }

    pub fn h_coefficient(&self) -> &BigInt {
        &self.b1
    }

    /// Residue coefficient of `x^k h^e` for `k ≥ 1`.
    pub fn coefficient(&self, k: usize, e: usize) -> u64 {
        assert!(k >= 1, "use constant_term / h_coefficient for k = 0");
        let v = if e == 0 { &self.xk } else { &self.xkh };
        v.get(k - 1).copied().unwrap_or(0)
    }

    /// Coefficient of a degree-`2t` basis monomial reduced mod `m`:
    /// `e = 0` is `x^t`, `e = 1` is `x^{t-1} h`.
    fn basis_coefficient_mod(&self, t: usize, e: usize) -> u64 {
        match (t, e) {
            (0, 0) => residue(&self.a0, self.m),
            (1, 1) => residue(&self.b1, self.m),
            (t, 0) => self.coefficient(t, 0),
            (t, _) => self.coefficient(t - 1, 1),
        }
    }

    /// Whether every term has cohomological degree `degree`.
    pub fn is_homogeneous(&self, degree: usize) -> bool {
        self.terms().iter().all(|(_, k, e)| 2 * (k + e) == degree)
    }

    pub fn is_zero(&self) -> bool {
        self.terms().is_empty()
    }

    /// Parses `h + x + 5x^2h`-style input.
    pub fn parse(m: u64, s: &str) -> Result<Self> {
        check_modulus(m)?;
        Self::from_terms(m, parse_terms(s)?)
    }
}

impl fmt::Display for P1RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        format_term(&mut parts, &self.a0, "");
        let top = self.xk.len().max(self.xkh.len() + 1);
        for t in 1..=top {
            let h_coeff = if t == 1 {
                self.b1.clone()
            } else {
                BigInt::from(self.coefficient(t - 1, 1))
            };
            format_term(&mut parts, &h_coeff, &format!("{}h", x_power(t - 1)));
            format_term(&mut parts, &BigInt::from(self.coefficient(t, 0)), &x_power(t));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// Product in `Z[x, h]/(mx, h² + xh)`.
pub fn p1_mul(a: &P1RingElement, b: &P1RingElement) -> Result<P1RingElement> {
    if a.m != b.m {
        return Err(Error::ModulusMismatch {
            left: a.m,
            right: b.m,
        });
    }
    let (ta, tb) = (a.terms(), b.terms());
    let products = ta.iter().flat_map(|(ca, ka, ea)| {
        tb.iter().map(move |(cb, kb, eb)| (ca * cb, ka + kb, ea + eb))
    });
    P1RingElement::from_terms(a.m, products)
}

/// `H^{degree}_G(P¹)` as an abstract group.
pub fn p1_graded_piece(m: u64, degree: usize) -> FinAbGroup {
    match degree {
        0 => FinAbGroup::free(1),
        d if d % 2 == 1 => FinAbGroup::zero(),
        2 => FinAbGroup::new(1, [m]),
        _ => FinAbGroup::elementary(m, 2),
    }
}

/// A fixed point of the rotation action on `P¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FixedPoint {
    Zero,
    Infinity,
}

impl FixedPoint {
    /// The class the Gysin map multiplies by: `h + x` at zero, `h` at infinity.
    pub fn gysin_class(self, m: u64) -> Result<P1RingElement> {
        match self {
            FixedPoint::Zero => P1RingElement::parse(m, "h + x"),
            FixedPoint::Infinity => P1RingElement::h(m),
        }
    }
}

/// Gysin pushforward `H^*(BG) → H^{*+2}_G(P¹)` of a fixed point.
pub fn p1_gysin(m: u64, point: FixedPoint, class: &BgPolynomial) -> Result<P1RingElement> {
    if class.m != m {
        return Err(Error::ModulusMismatch {
            left: m,
            right: class.m,
        });
    }
    p1_mul(&point.gysin_class(m)?, &P1RingElement::from_bg(class)?)
}

/// Whether `(α, β) ↦ left·α + right·β` from two copies of `H^*(BG) ⊗ Z/m`
/// to `H^*_G(P¹) ⊗ Z/m` is injective in every target degree `≤ max_degree`.
///
/// `left` and `right` must be homogeneous of degree 2.
pub fn gysin_pair_injective(
    m: u64,
    max_degree: usize,
    left: &P1RingElement,
    right: &P1RingElement,
) -> Result<bool> {
    for c in [left, right] {
        if c.m != m {
            return Err(Error::ModulusMismatch { left: m, right: c.m });
        }
        if !c.is_homogeneous(2) {
            return Err(Error::Parse(format!("{c} is not homogeneous of degree 2")));
        }
    }
    for t in 1..=max_degree / 2 {
        // source degree 2(t-1) has basis x^{t-1} in each copy; target degree
        // 2t has basis x^t, x^{t-1} h
        let source = P1RingElement::monomial(m, 1, t - 1, 0)?;
        let images = [p1_mul(left, &source)?, p1_mul(right, &source)?];
        let mut a = IntMatrix::zeros(2, 2);
        for (col, img) in images.iter().enumerate() {
            a.set(0, col, img.basis_coefficient_mod(t, 0));
            a.set(1, col, img.basis_coefficient_mod(t, 1));
        }
        if !is_injective_mod(&a, m) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Injectivity of `i_{0,*} + i_{∞,*}` mod `m` up to `max_degree`.
pub fn p1_gysin_injectivity(m: u64, max_degree: usize) -> Result<bool> {
    gysin_pair_injective(
        m,
        max_degree,
        &FixedPoint::Zero.gysin_class(m)?,
        &FixedPoint::Infinity.gysin_class(m)?,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bg(m: u64, s: &str) -> BgPolynomial {
        BgPolynomial::parse(m, s).unwrap()
    }

    fn p1(m: u64, s: &str) -> P1RingElement {
        P1RingElement::parse(m, s).unwrap()
    }

    #[test]
    fn bg_mul_examples() {
        let m = 7;
        let x = BgPolynomial::x(m).unwrap();
        assert_eq!(bg_mul(&x, &x).unwrap(), BgPolynomial::monomial(m, 1, 2).unwrap());
        let two_x = bg(4, "2x");
        assert!(bg_mul(&two_x, &two_x).unwrap().is_zero());
        let prod = bg_mul(&bg(3, "3 + x"), &bg(3, "2 + x")).unwrap();
        assert_eq!(prod, BgPolynomial::new(3, 6, &[5, 1]).unwrap());
        assert_eq!(prod.to_string(), "6 + 2x + x^2");
        assert_eq!(
            bg_mul(&bg(3, "x"), &bg(4, "x")),
            Err(Error::ModulusMismatch { left: 3, right: 4 })
        );
    }

    #[test]
    fn constant_term_stays_integral() {
        let p = bg_mul(&bg(2, "3"), &bg(2, "5 + x")).unwrap();
        assert_eq!(p.constant_term(), &BigInt::from(15));
        assert_eq!(p.coefficient(1), 1);
    }

    #[test]
    fn c1_power_examples() {
        assert_eq!(c1_power_character(5, 2, 3).unwrap(), bg(5, "3x^3"));
        assert!(c1_power_character(5, 0, 2).unwrap().is_zero());
        assert_eq!(c1_power_character(5, 4, 0).unwrap(), bg(5, "1"));
        assert_eq!(c1_power_character(5, -1, 1).unwrap(), bg(5, "4x"));
    }

    #[test]
    fn top_chern_examples() {
        let m = 5;
        for j in 0..5 {
            for c1 in -3..=3 {
                let t = top_chern_tensor_character(&[1, c1], j, m).unwrap();
                let expected = BgPolynomial::new(m, c1, &[j]).unwrap();
                assert_eq!(t, expected);
            }
        }
        let t = top_chern_tensor_character(&[1, 4, -2], 0, 6).unwrap();
        assert_eq!(t, BgPolynomial::constant(6, -2).unwrap());
        let t = top_chern_tensor_character(&[1, 0, 0], 3, 4).unwrap();
        assert_eq!(t, bg(4, "x^2"));
        assert!(top_chern_tensor_character(&[2, 1], 1, 3).is_err());
        assert!(top_chern_tensor_character(&[], 1, 3).is_err());
    }

    #[test]
    fn leading_coefficient_examples() {
        let r = IsotypicRanks::new(4, &[0, 2]).unwrap();
        assert_eq!(top_chern_leading_coefficient(&r), 1);
        let r = IsotypicRanks::from_weights(5, &[(2, 1), (3, 1)]).unwrap();
        assert_eq!(top_chern_leading_coefficient(&r), 1);
        let r = IsotypicRanks::new(4, &[0, 0, 1]).unwrap();
        assert_eq!(top_chern_leading_coefficient(&r), 2);
        let r = IsotypicRanks::new(4, &[1, 1]).unwrap();
        assert_eq!(top_chern_leading_coefficient(&r), 0);
        assert!(IsotypicRanks::new(2, &[0, 1, 1]).is_err());
    }

    #[test]
    fn unit_check_examples() {
        let r = IsotypicRanks::from_weights(6, &[(1, 1), (5, 2)]).unwrap();
        assert!(gysin_unit_check(&r));
        let r = IsotypicRanks::new(4, &[0, 0, 1]).unwrap();
        assert!(!gysin_unit_check(&r));
        for p in [2u64, 3, 5, 7] {
            let ranks: Vec<u64> = (0..p).map(|j| if j == 0 { 0 } else { j % 3 }).collect();
            assert!(gysin_unit_check(&IsotypicRanks::new(p, &ranks).unwrap()));
        }
    }

    #[test]
    fn p1_relations() {
        let m = 5;
        let h = P1RingElement::h(m).unwrap();
        let hh = p1_mul(&h, &h).unwrap();
        assert_eq!(hh, P1RingElement::monomial(m, (m - 1) as i64, 1, 1).unwrap());
        assert_eq!(hh.to_string(), "4xh");
        let hhh = p1_mul(&hh, &h).unwrap();
        assert_eq!(hhh, p1(m, "x^2h"));
        let x = P1RingElement::x(m).unwrap();
        let xh = p1_mul(&x, &h).unwrap();
        assert_eq!(xh, p1(m, "xh"));
        let scaled = p1_mul(&P1RingElement::monomial(m, m as i64, 0, 0).unwrap(), &xh).unwrap();
        assert!(scaled.is_zero());
        // m·h itself survives: Z·h is free
        let mh = p1_mul(&P1RingElement::monomial(m, m as i64, 0, 0).unwrap(), &h).unwrap();
        assert_eq!(mh.h_coefficient(), &BigInt::from(m));
    }

    #[test]
    fn p1_render_and_parse() {
        let e = p1(7, "h + x + 5x^2h");
        assert_eq!(e.to_string(), "h + x + 5x^2h");
        assert_eq!(p1(7, "5x^2h + x + h"), e);
        assert_eq!(p1(3, "-2 - h + 4x").to_string(), "-2 - h + x");
        assert_eq!(p1(3, "0").to_string(), "0");
        assert_eq!(p1(3, "h^2 + x*h").to_string(), "0");
        for bad in ["", "y", "x^", "2h3", "+"] {
            assert!(P1RingElement::parse(3, bad).is_err(), "{bad:?}");
        }
        assert!(BgPolynomial::parse(3, "h").is_err());
        assert_eq!(bg(4, "3 + 2x + x^2").to_string(), "3 + 2x + x^2");
        assert_eq!(bg(4, "-1 + 5x").to_string(), "-1 + x");
    }

    #[test]
    fn graded_pieces() {
        assert_eq!(p1_graded_piece(3, 2), "Z + Z/3".parse().unwrap());
        assert_eq!(p1_graded_piece(3, 0), FinAbGroup::free(1));
        assert_eq!(p1_graded_piece(2, 6), FinAbGroup::elementary(2, 2));
        assert_eq!(p1_graded_piece(2, 5), FinAbGroup::zero());
    }

    #[test]
    fn gysin_examples() {
        let m = 4;
        let one = BgPolynomial::constant(m, 1).unwrap();
        assert_eq!(p1_gysin(m, FixedPoint::Zero, &one).unwrap(), p1(m, "h + x"));
        assert_eq!(p1_gysin(m, FixedPoint::Infinity, &one).unwrap(), p1(m, "h"));
        let x = BgPolynomial::x(m).unwrap();
        assert_eq!(p1_gysin(m, FixedPoint::Zero, &x).unwrap(), p1(m, "xh + x^2"));
        assert!(p1_gysin(3, FixedPoint::Zero, &x).is_err());
    }

    #[test]
    fn sections_are_disjoint() {
        for m in 2..=6 {
            let a = FixedPoint::Zero.gysin_class(m).unwrap();
            let b = FixedPoint::Infinity.gysin_class(m).unwrap();
            assert!(p1_mul(&a, &b).unwrap().is_zero());
        }
    }

    #[test]
    fn injectivity() {
        assert!(p1_gysin_injectivity(2, 8).unwrap());
        assert!(p1_gysin_injectivity(6, 8).unwrap());
        let h = P1RingElement::h(3).unwrap();
        assert!(!gysin_pair_injective(3, 2, &h, &h).unwrap());
        assert!(gysin_pair_injective(3, 2, &h, &P1RingElement::one(3).unwrap()).is_err());
    }
}
