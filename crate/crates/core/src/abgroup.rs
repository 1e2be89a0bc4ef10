//! Finitely generated abelian groups in invariant-factor form, with the
//! direct sum, tensor product and Tor needed by the Künneth formula.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// `Z^r ⊕ Z/d₁ ⊕ … ⊕ Z/dₖ` with `d₁ | d₂ | … | dₖ` and every `dᵢ ≥ 2`.
///
/// The representation is unique, so structural equality is isomorphism.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FinAbGroup {
    free_rank: usize,
    torsion: Vec<BigUint>,
}

/// Rewrites a list of cyclic orders as an invariant-factor chain.
///
/// Pairwise `(a, b) -> (gcd, lcm)` preserves the group and, run over all
/// pairs `i < j`, leaves `L[i] | L[j]`. Zero orders are not allowed here.
fn normalize_chain(mut orders: Vec<BigUint>) -> Vec<BigUint> {
    orders.retain(|d| !d.is_one());
    debug_assert!(orders.iter().all(|d| !d.is_zero()));
    orders.sort();
    for i in 0..orders.len() {
        for j in i + 1..orders.len() {
            if orders[j].is_multiple_of(&orders[i]) {
                continue;
            }
            let g = orders[i].gcd(&orders[j]);
            let l = &orders[i] / &g * &orders[j];
            orders[i] = g;
            orders[j] = l;
        }
    }
    orders.retain(|d| !d.is_one());
    orders
}

impl FinAbGroup {
    /// Normalizes arbitrary cyclic summands: a zero order contributes a free
    /// summand, order one is dropped.
    pub fn new<T: Into<BigUint>>(free_rank: usize, orders: impl IntoIterator<Item = T>) -> Self {
        let mut free_rank = free_rank;
        let mut finite = Vec::new();
        for d in orders {
            let d = d.into();
            if d.is_zero() {
                free_rank += 1;
            } else {
                finite.push(d);
            }
        }
        Self {
            free_rank,
            torsion: normalize_chain(finite),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        Self {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// `Z/m`; `cyclic(0)` is `Z` and `cyclic(1)` is trivial.
    pub fn cyclic(m: u64) -> Self {
        Self::new(0, [m])
    }

    /// `(Z/m)^k`.
    pub fn elementary(m: u64, k: usize) -> Self {
        Self::new(0, std::iter::repeat_n(m, k))
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigUint] {
        &self.torsion
    }

    /// The torsion chain as machine integers, `None` if a factor overflows.
    pub fn torsion_u64(&self) -> Option<Vec<u64>> {
        self.torsion.iter().map(ToPrimitive::to_u64).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigUint> {
        self.is_finite()
            .then(|| self.torsion.iter().fold(BigUint::one(), |acc, d| acc * d))
    }

    /// Largest invariant factor; 1 for the trivial group, `None` if infinite.
    pub fn exponent(&self) -> Option<BigUint> {
        self.is_finite()
            .then(|| self.torsion.last().cloned().unwrap_or_else(BigUint::one))
    }

    /// Whether `k · G = 0`.
    pub fn is_annihilated_by(&self, k: u64) -> bool {
        self.free_rank == 0 && self.torsion.iter().all(|d| BigUint::from(k).is_multiple_of(d))
    }

    /// Number of canonical generators (free first, then torsion in chain order).
    pub fn num_generators(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    /// Orders of the canonical generators, 0 for free generators.
    pub fn generator_orders(&self) -> Vec<BigUint> {
        std::iter::repeat_n(BigUint::zero(), self.free_rank)
            .chain(self.torsion.iter().cloned())
            .collect()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::new(
            self.free_rank + other.free_rank,
            self.torsion.iter().chain(&other.torsion).cloned(),
        )
    }

    /// `G^k`.
    pub fn power(&self, k: usize) -> Self {
        (0..k).fold(Self::zero(), |acc, _| acc.direct_sum(self))
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut orders = Vec::new();
        for _ in 0..other.free_rank {
            orders.extend(self.torsion.iter().cloned());
        }
        for _ in 0..self.free_rank {
            orders.extend(other.torsion.iter().cloned());
        }
        for a in &self.torsion {
            for b in &other.torsion {
                orders.push(a.gcd(b));
            }
        }
        Self::new(self.free_rank * other.free_rank, orders)
    }

    pub fn tor(&self, other: &Self) -> Self {
        let orders = self
            .torsion
            .iter()
            .flat_map(|a| other.torsion.iter().map(move |b| a.gcd(b)));
        Self::new(0, orders)
    }

    /// `G ⊗ Z/m`.
    pub fn tensor_with_cyclic(&self, m: u64) -> Self {
        self.tensor(&Self::cyclic(m))
    }
}

impl fmt::Debug for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinAbGroup({self})")
    }
}

/// Renders as `Z^2 + Z/2 + (Z/6)^3`; the trivial group is `0`.
impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let d = &self.torsion[i];
            let run = self.torsion[i..].iter().take_while(|x| *x == d).count();
            if run == 1 {
                parts.push(format!("Z/{d}"));
            } else {
                parts.push(format!("(Z/{d})^{run}"));
            }
            i += run;
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

fn parse_count(s: &str, whole: &str) -> Result<usize, Error> {
    s.trim()
        .parse::<usize>()
        .map_err(|_| Error::Parse(format!("bad exponent {s:?} in {whole:?}")))
}

/// Accepts the rendered form and any sum of `0`, `Z`, `Z^r`, `Z/d`, `(Z/d)^k`
/// summands in any order; the result is normalized.
impl FromStr for FinAbGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let whole = s;
        if s.trim().is_empty() {
            return Err(Error::Parse("empty group".into()));
        }
        let mut free = 0usize;
        let mut orders: Vec<BigUint> = Vec::new();
        for term in s.split('+') {
            let term = term.trim();
            if term == "0" {
                continue;
            }
            let (base, count) = if let Some(rest) = term.strip_prefix('(') {
                let (inner, tail) = rest
                    .split_once(')')
                    .ok_or_else(|| Error::Parse(format!("unbalanced parenthesis in {whole:?}")))?;
                let exp = tail
                    .trim()
                    .strip_prefix('^')
                    .ok_or_else(|| Error::Parse(format!("expected ^ after ) in {whole:?}")))?;
                (inner.trim(), parse_count(exp, whole)?)
            } else if let Some((b, e)) = term.split_once('^') {
                (b.trim(), parse_count(e, whole)?)
            } else {
                (term, 1)
            };
            if base == "Z" {
                free += count;
            } else if let Some(d) = base.strip_prefix("Z/") {
                let d: BigUint = d
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad order {d:?} in {whole:?}")))?;
                if d.is_zero() {
                    free += count;
                } else {
                    orders.extend(std::iter::repeat_n(d, count));
                }
            } else {
                return Err(Error::Parse(format!("unrecognized summand {term:?} in {whole:?}")));
            }
        }
        Ok(Self::new(free, orders))
    }
}

impl Serialize for FinAbGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FinAbGroup {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FinAbGroup {
        s.parse().unwrap()
    }

    #[test]
    fn direct_sum_examples() {
        assert_eq!(FinAbGroup::cyclic(2).direct_sum(&FinAbGroup::cyclic(3)), FinAbGroup::cyclic(6));
        let twos = FinAbGroup::cyclic(2).direct_sum(&FinAbGroup::cyclic(2));
        assert_eq!(twos.torsion_u64().unwrap(), vec![2, 2]);
        let s = FinAbGroup::free(2).direct_sum(&FinAbGroup::cyclic(4));
        assert_eq!(s.free_rank(), 2);
        assert_eq!(s.torsion_u64().unwrap(), vec![4]);
    }

    #[test]
    fn chain_merge_of_mixed_primes() {
        // Z/4 + Z/6 + Z/10 = Z/2 + Z/2 + Z/60
        let s = FinAbGroup::new(0, [4u32, 6, 10]);
        assert_eq!(s.torsion_u64().unwrap(), vec![2, 2, 60]);
        let s = FinAbGroup::new(0, [12u32, 18]);
        assert_eq!(s.torsion_u64().unwrap(), vec![6, 36]);
    }

    #[test]
    fn tensor_examples() {
        let m = 5;
        assert_eq!(
            FinAbGroup::free(2).tensor(&FinAbGroup::cyclic(m)),
            FinAbGroup::elementary(m, 2)
        );
        assert_eq!(FinAbGroup::cyclic(4).tensor(&FinAbGroup::cyclic(6)), FinAbGroup::cyclic(2));
        let a = g("Z^2 + Z/2 + Z/6");
        assert_eq!(FinAbGroup::free(1).tensor(&a), a);
        assert_eq!(FinAbGroup::free(2).tensor(&FinAbGroup::free(3)), FinAbGroup::free(6));
    }

    #[test]
    fn tor_examples() {
        assert_eq!(FinAbGroup::free(2).tor(&g("Z + Z/6")), FinAbGroup::zero());
        assert_eq!(FinAbGroup::cyclic(4).tor(&FinAbGroup::cyclic(6)), FinAbGroup::cyclic(2));
        assert_eq!(FinAbGroup::cyclic(7).tor(&FinAbGroup::cyclic(7)), FinAbGroup::cyclic(7));
    }

    #[test]
    fn tensor_with_cyclic_examples() {
        for genus in 0..4 {
            assert_eq!(
                FinAbGroup::free(2 * genus).tensor_with_cyclic(3),
                FinAbGroup::elementary(3, 2 * genus)
            );
        }
        assert_eq!(FinAbGroup::cyclic(3).tensor_with_cyclic(2), FinAbGroup::zero());
        assert_eq!(g("Z + Z/4").tensor_with_cyclic(2), FinAbGroup::elementary(2, 2));
    }

    #[test]
    fn render() {
        assert_eq!(FinAbGroup::zero().to_string(), "0");
        assert_eq!(FinAbGroup::free(1).to_string(), "Z");
        assert_eq!(g("Z/2 + Z/3").to_string(), "Z/6");
        assert_eq!(FinAbGroup::elementary(2, 6).to_string(), "(Z/2)^6");
        assert_eq!(g("Z^2 + Z/2 + Z/6").to_string(), "Z^2 + Z/2 + Z/6");
        assert_eq!(g("Z/6 + Z + Z/2 + Z").to_string(), "Z^2 + Z/2 + Z/6");
        assert_eq!(g("(Z/2)^3 + Z/4 + 0").to_string(), "(Z/2)^3 + Z/4");
        assert_eq!(g("Z/1 + Z/0").to_string(), "Z");
    }

    #[test]
    fn parse_errors() {
        for bad in ["", "Q", "Z/x", "(Z/2", "(Z/2)3", "Z^-1", "Z/2 +"] {
            assert!(bad.parse::<FinAbGroup>().is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn serde_as_string() {
        let a = g("Z + (Z/2)^2");
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, "\"Z + (Z/2)^2\"");
        assert_eq!(serde_json::from_str::<FinAbGroup>(&s).unwrap(), a);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn group() -> impl Strategy<Value = FinAbGroup> {
            (0usize..3, proptest::collection::vec(1u32..=12, 0..4))
                .prop_map(|(r, t)| FinAbGroup::new(r, t))
        }

        proptest! {
            #[test]
            fn render_parse_round_trip(a in group()) {
                let s = a.to_string();
                prop_assert_eq!(s.parse::<FinAbGroup>().unwrap(), a.clone());
                prop_assert_eq!(s.parse::<FinAbGroup>().unwrap().to_string(), s);
            }

            #[test]
            fn sum_and_tensor_commutative_associative(a in group(), b in group(), c in group()) {
                prop_assert_eq!(a.direct_sum(&b), b.direct_sum(&a));
                prop_assert_eq!(a.direct_sum(&b).direct_sum(&c), a.direct_sum(&b.direct_sum(&c)));
                prop_assert_eq!(a.tensor(&b), b.tensor(&a));
                prop_assert_eq!(a.tensor(&b).tensor(&c), a.tensor(&b.tensor(&c)));
            }

            #[test]
            fn distributivity(a in group(), b in group(), c in group()) {
                prop_assert_eq!(a.tensor(&b.direct_sum(&c)), a.tensor(&b).direct_sum(&a.tensor(&c)));
                prop_assert_eq!(a.tor(&b.direct_sum(&c)), a.tor(&b).direct_sum(&a.tor(&c)));
            }
        }
    }
}
