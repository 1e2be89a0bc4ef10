//! Checks `H^1(G, H^2(M, Z)) ≅ ⊕_D H^1(D, Z) ⊗ Z/m` for a cyclic action on
//! a surface, given the action on `H^2` and the fixed-locus data.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::abgroup::FinAbGroup;
use crate::cyclic_cohomology::{direct_sum_modules, group_cohomology, induced_module, GModule};
use crate::error::{Error, Result};
use crate::intlinalg::IntMatrix;
use crate::spaces::AbMap;

/// A surface `M` with a `Z/m` action, described by the action on `H^2(M, Z)`
/// and the genera / point count of the fixed locus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SurfaceJson", into = "SurfaceJson")]
pub struct SurfaceWithAction {
    pub name: String,
    h2: GModule,
    pub fixed_curve_genera: Vec<u64>,
    pub isolated_fixed_points: u64,
    pub h1_zero: bool,
    pub stabilizers_ok: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SurfaceJson {
    name: String,
    m: u64,
    action: IntMatrix,
    #[serde(default)]
    fixed_curve_genera: Vec<u64>,
    #[serde(default)]
    isolated_fixed_points: u64,
    h1_zero: bool,
    stabilizers_ok: bool,
}

impl TryFrom<SurfaceJson> for SurfaceWithAction {
    type Error = Error;

    fn try_from(raw: SurfaceJson) -> Result<Self> {
        let h2 = GModule::new(raw.m, raw.action)?;
        Self::new(
            raw.name,
            h2,
            raw.fixed_curve_genera,
            raw.isolated_fixed_points,
            raw.h1_zero,
            raw.stabilizers_ok,
        )
    }
}

impl From<SurfaceWithAction> for SurfaceJson {
    fn from(s: SurfaceWithAction) -> Self {
        SurfaceJson {
            name: s.name,
            m: s.h2.order(),
            action: s.h2.action().clone(),
            fixed_curve_genera: s.fixed_curve_genera,
            isolated_fixed_points: s.isolated_fixed_points,
            h1_zero: s.h1_zero,
            stabilizers_ok: s.stabilizers_ok,
        }
    }
}

impl SurfaceWithAction {
    pub fn new(
        name: impl Into<String>,
        h2: GModule,
        fixed_curve_genera: Vec<u64>,
        isolated_fixed_points: u64,
        h1_zero: bool,
        stabilizers_ok: bool,
    ) -> Result<Self> {
        if h2.order() < 2 {
            return Err(Error::InvalidGroupOrder {
                m: h2.order(),
                min: 2,
            });
        }
        Ok(Self {
            name: name.into(),
            h2,
            fixed_curve_genera,
            isolated_fixed_points,
            h1_zero,
            stabilizers_ok,
        })
    }

    pub fn order(&self) -> u64 {
        self.h2.order()
    }

    pub fn h2(&self) -> &GModule {
        &self.h2
    }

    pub fn has_fixed_point(&self) -> bool {
        !self.fixed_curve_genera.is_empty() || self.isolated_fixed_points > 0
    }
}

/// Violated hypotheses, in a fixed order; empty means admissible.
pub fn verify_hypotheses(s: &SurfaceWithAction) -> Vec<String> {
    let mut out = Vec::new();
    if s.h2.is_trivial_action() {
        out.push("action trivial".to_string());
    }
    if !s.h2.action().pow(s.order()).is_identity() {
        out.push(format!("T^{} != I", s.order()));
    }
    if !s.has_fixed_point() {
        out.push("no fixed point".to_string());
    }
    if !s.h1_zero {
        out.push("H^1(M, Z) not asserted zero".to_string());
    }
    if !s.stabilizers_ok {
        out.push("stabilizers not asserted trivial or full".to_string());
    }
    out
}

/// `H^1(G, H^2(M, Z))`.
pub fn lhs(s: &SurfaceWithAction) -> FinAbGroup {
    group_cohomology(&s.h2, 1)
}

/// `⊕_D H^1(D, Z) ⊗ Z/m = (Z/m)^{2 Σ g_D}`.
pub fn rhs(s: &SurfaceWithAction) -> FinAbGroup {
    let total: u64 = s.fixed_curve_genera.iter().sum();
    FinAbGroup::elementary(s.order(), 2 * total as usize)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub admissible: bool,
    pub violations: Vec<String>,
    pub lhs: FinAbGroup,
    pub rhs: FinAbGroup,
    pub isomorphic: bool,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "surface:    {}", self.name)?;
        if self.admissible {
            writeln!(f, "admissible: yes")?;
        } else {
            writeln!(f, "admissible: no ({})", self.violations.join("; "))?;
        }
        writeln!(f, "H^1(G, H^2(M, Z))       = {}", self.lhs)?;
        writeln!(f, "sum H^1(D, Z) (x) Z/m   = {}", self.rhs)?;
        write!(f, "isomorphic: {}", if self.isomorphic { "yes" } else { "no" })
    }
}

pub fn check_main_theorem(s: &SurfaceWithAction) -> Verdict {
    let violations = verify_hypotheses(s);
    let (l, r) = (lhs(s), rhs(s));
    Verdict {
        name: s.name.clone(),
        admissible: violations.is_empty(),
        violations,
        isomorphic: l == r,
        lhs: l,
        rhs: r,
    }
}

/// `H^3_G(M, Z)`, identified with `H^1(G, H^2(M, Z))` for admissible surfaces.
pub fn h3_equivariant(s: &SurfaceWithAction) -> Result<FinAbGroup> {
    let violations = verify_hypotheses(s);
    if !violations.is_empty() {
        return Err(Error::InadmissibleSurface(violations));
    }
    Ok(lhs(s))
}

/// The double cover of `P²` branched in a smooth curve of degree `2d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleCover {
    pub d: u64,
    pub r: u64,
    pub genus: u64,
    pub lhs_abstract: FinAbGroup,
    pub rhs_abstract: FinAbGroup,
    pub consistent: bool,
}

impl fmt::Display for DoubleCover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "d = {}", self.d)?;
        writeln!(f, "rank H^2 = {}", self.r)?;
        writeln!(f, "branch genus = {}", self.genus)?;
        writeln!(f, "H^1(G, H^2(M, Z)) = {}", self.lhs_abstract)?;
        writeln!(f, "H^1(C, Z) (x) Z/2 = {}", self.rhs_abstract)?;
        write!(f, "consistent: {}", if self.consistent { "yes" } else { "no" })
    }
}

pub fn double_cover_family(d: u64) -> Result<DoubleCover> {
    if d < 1 {
        return Err(Error::InvalidParameter(format!("degree parameter d must be >= 1, got {d}")));
    }
    let genus = (2 * d - 1) * (2 * d - 2) / 2;
    let r = 2 * (2 * d * d + 2 - 3 * d);
    debug_assert_eq!(r, (2 * d - 1) * (2 * d - 2) + 2);

    // 0 → ε^{r-1} → H^2 → Z → 0 gives H^1(G, H^2) = coker(δ: Z → (Z/2)^{r-1}),
    // with δ nonzero on a single summand since H^2^G → Z is ·2.
    let z2 = FinAbGroup::cyclic(2);
    let delta = AbMap::new(FinAbGroup::free(1), z2, IntMatrix::from_rows(&[vec![1]]))?;
    let lhs_abstract = delta
        .cokernel()
        .direct_sum(&FinAbGroup::elementary(2, (r - 2) as usize));
    let rhs_abstract = FinAbGroup::elementary(2, 2 * genus as usize);
    Ok(DoubleCover {
        d,
        r,
        genus,
        consistent: lhs_abstract == rhs_abstract,
        lhs_abstract,
        rhs_abstract,
    })
}

/// Whether adding the permutation module `Z[G/H]`, `|G/H| = index`, leaves
/// `H^1` unchanged.
pub fn blowup_invariance_check(a: &GModule, index: u64) -> Result<bool> {
    let ind = induced_module(a.order(), index)?;
    let sum = direct_sum_modules(a, &ind)?;
    Ok(group_cohomology(&sum, 1) == group_cohomology(a, 1))
}

/// Action of the Geiser involution `D ↦ (D·K)K − D` on `H^2` of a degree-2
/// del Pezzo surface, in the basis `e_0, …, e_7` with form `diag(1, -1, …, -1)`
/// and `K = -3e_0 + e_1 + … + e_7`. Column `j` is the image of `e_j`.
pub fn geiser_involution() -> IntMatrix {
    let n = 8;
    let form = |i: usize| if i == 0 { 1 } else { -1 };
    let k: Vec<i64> = (0..n).map(|i| if i == 0 { -3 } else { 1 }).collect();
    let mut t = IntMatrix::zeros(n, n);
    for j in 0..n {
        let dk = form(j) * k[j];
        for (i, ki) in k.iter().enumerate() {
            let delta = i64::from(i == j);
            t.set(i, j, BigInt::from(dk * ki - delta));
        }
    }
    t
}

/// The quadric `P¹ × P¹` with the factor swap.
pub fn quadric_swap() -> SurfaceWithAction {
    let h2 = GModule::new(2, IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]])).expect("involution");
    SurfaceWithAction::new("quadric-swap", h2, vec![0], 0, true, true).expect("m = 2")
}

/// The degree-2 del Pezzo surface with its Geiser involution; the fixed
/// locus is the ramification quartic, of genus 3.
pub fn dp2_geiser() -> SurfaceWithAction {
    let h2 = GModule::new(2, geiser_involution()).expect("involution");
    SurfaceWithAction::new("dp2-geiser", h2, vec![3], 0, true, true).expect("m = 2")
}
