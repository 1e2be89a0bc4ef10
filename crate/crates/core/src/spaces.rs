//! Cohomology tables of the standard spaces (classifying space of `Z/m`, lens
//! spaces, the cone over a lens space, a linear representation), the
//! Künneth-built `K^j` groups, and an exactness checker for sequences of
//! maps between finitely generated abelian groups.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::abgroup::FinAbGroup;
use crate::error::{Error, Result};
use crate::intlinalg::{cokernel, image_basis, kernel_basis, solve_in_lattice, IntMatrix};

/// A table `degree -> group` for degrees `0..=max_degree`.
///
/// A finite table is zero above `max_degree` (cohomology of a finite complex);
/// a truncated table says nothing about higher degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedGroup {
    entries: Vec<FinAbGroup>,
    truncated: bool,
}

impl GradedGroup {
    /// Table that vanishes above the last entry. An empty list is the zero table.
    pub fn finite(entries: Vec<FinAbGroup>) -> Self {
        let entries = if entries.is_empty() { vec![FinAbGroup::zero()] } else { entries };
        Self {
            entries,
            truncated: false,
        }
    }

    /// Table known only up to the last entry.
    pub fn truncated(entries: Vec<FinAbGroup>) -> Self {
        Self {
            truncated: true,
            ..Self::finite(entries)
        }
    }

    pub fn max_degree(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    /// The group in `degree`, or `None` if the table does not determine it.
    pub fn get(&self, degree: usize) -> Option<FinAbGroup> {
        match self.entries.get(degree) {
            Some(g) => Some(g.clone()),
            None if self.truncated => None,
            None => Some(FinAbGroup::zero()),
        }
    }

    pub fn entries(&self) -> &[FinAbGroup] {
        &self.entries
    }

    /// Degree-wise `A ⊗ Z/m`-style map over every stored entry.
    pub fn map_entries(&self, f: impl Fn(&FinAbGroup) -> FinAbGroup) -> Self {
        Self {
            entries: self.entries.iter().map(f).collect(),
            truncated: self.truncated,
        }
    }
}

impl fmt::Display for GradedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.max_degree().to_string().len().max("degree".len());
        writeln!(f, "{:>width$}  group", "degree")?;
        for (d, g) in self.entries.iter().enumerate() {
            writeln!(f, "{d:>width$}  {g}")?;
        }
        if self.truncated {
            writeln!(f, "{:>width$}  (not computed)", "...")?;
        }
        Ok(())
    }
}

/// `{"0": "Z", "1": "0", "2": "Z/3", ...}` with every degree present, plus
/// `"truncated": true` for truncated tables.
impl Serialize for GradedGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let extra = usize::from(self.truncated);
        let mut map = serializer.serialize_map(Some(self.entries.len() + extra))?;
        for (d, g) in self.entries.iter().enumerate() {
            map.serialize_entry(&d.to_string(), g)?;
        }
        if self.truncated {
            map.serialize_entry("truncated", &true)?;
        }
        map.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum TableValue {
    Group(FinAbGroup),
    Flag(bool),
}

impl<'de> Deserialize<'de> for GradedGroup {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw: BTreeMap<String, TableValue> = BTreeMap::deserialize(deserializer)?;
        let mut truncated = false;
        let mut by_degree = BTreeMap::new();
        for (key, value) in raw {
            match (key.as_str(), value) {
                ("truncated", TableValue::Flag(b)) => truncated = b,
                (k, TableValue::Group(g)) => {
                    let d: usize = k
                        .parse()
                        .map_err(|_| D::Error::custom(format!("bad degree key {k:?}")))?;
                    by_degree.insert(d, g);
                }
                (k, TableValue::Flag(_)) => {
                    return Err(D::Error::custom(format!("unexpected flag {k:?}")));
                }
            }
        }
        let max = by_degree.keys().next_back().copied().unwrap_or(0);
        let entries = (0..=max)
            .map(|d| by_degree.remove(&d).unwrap_or_default())
            .collect();
        Ok(if truncated {
            GradedGroup::truncated(entries)
        } else {
            GradedGroup::finite(entries)
        })
    }
}

/// `H^*(B Z/m)`: `Z`, then `0` in odd and `Z/m` in positive even degrees.
pub fn bg_cohomology(m: u64, max_degree: usize) -> GradedGroup {
    GradedGroup::truncated(
        (0..=max_degree)
            .map(|d| match d {
                0 => FinAbGroup::free(1),
                d if d % 2 == 1 => FinAbGroup::zero(),
                _ => FinAbGroup::cyclic(m),
            })
            .collect(),
    )
}

/// Reduced `H̃^*(B Z/m)`.
pub fn bg_reduced_cohomology(m: u64, max_degree: usize) -> GradedGroup {
    let mut t = bg_cohomology(m, max_degree);
    t.entries[0] = FinAbGroup::zero();
    t
}

/// `H^*(L_{2n-1}(m))`. For `n = 1` this is the circle.
pub fn lens_cohomology(n: usize, m: u64) -> GradedGroup {
    assert!(n >= 1, "lens space dimension index must be at least 1");
    let top = 2 * n - 1;
    GradedGroup::finite(
        (0..=top)
            .map(|d| {
                if d == 0 || d == top {
                    FinAbGroup::free(1)
                } else if d % 2 == 0 {
                    FinAbGroup::cyclic(m)
                } else {
                    FinAbGroup::zero()
                }
            })
            .collect(),
    )
}

/// `H_*(L_{2n-1}(m))`.
pub fn lens_homology(n: usize, m: u64) -> GradedGroup {
    assert!(n >= 1, "lens space dimension index must be at least 1");
    let top = 2 * n - 1;
    GradedGroup::finite(
        (0..=top)
            .map(|d| {
                if d == 0 || d == top {
                    FinAbGroup::free(1)
                } else if d % 2 == 1 {
                    FinAbGroup::cyclic(m)
                } else {
                    FinAbGroup::zero()
                }
            })
            .collect(),
    )
}

/// Compactly supported cohomology of the open cone over `L_{2n-1}(m)`,
/// i.e. the reduced lens cohomology shifted up by one.
pub fn cone_lens_compact(n: usize, m: u64) -> GradedGroup {
    let lens = lens_cohomology(n, m);
    let entries = (0..=2 * n)
        .map(|d| if d <= 1 { FinAbGroup::zero() } else { lens.entries[d - 1].clone() })
        .collect();
    GradedGroup::finite(entries)
}

/// `H^j_{c,G}(C^n) = H^{j-2n}(BG)`: the BG table shifted up by `2n`.
pub fn equivariant_rep_compact(n: usize, m: u64, max_degree: usize) -> GradedGroup {
    let shift = 2 * n;
    let bg = bg_cohomology(m, max_degree.saturating_sub(shift));
    GradedGroup::truncated(
        (0..=max_degree)
            .map(|d| if d < shift { FinAbGroup::zero() } else { bg.entries[d - shift].clone() })
            .collect(),
    )
}

/// `⊕_{p+q=d} A^p ⊗ B^q  ⊕  ⊕_{p+q=d+1} Tor(A^p, B^q)`.
///
/// Fails with `DegreeNotCovered` only when an undetermined entry of a
/// truncated table could contribute.
pub fn kunneth_degree(a: &GradedGroup, b: &GradedGroup, degree: usize) -> Result<FinAbGroup> {
    let mut total = FinAbGroup::zero();
    for p in 0..=degree {
        let q = degree - p;
        match (a.get(p), b.get(q)) {
            (Some(x), Some(y)) => total = total.direct_sum(&x.tensor(&y)),
            (Some(x), None) | (None, Some(x)) if x.is_trivial() => {}
            (None, _) => return Err(Error::DegreeNotCovered { degree: p }),
            (_, None) => return Err(Error::DegreeNotCovered { degree: q }),
        }
    }
    for p in 0..=degree + 1 {
        let q = degree + 1 - p;
        match (a.get(p), b.get(q)) {
            (Some(x), Some(y)) => total = total.direct_sum(&x.tor(&y)),
            (Some(x), None) | (None, Some(x)) if x.is_torsion_free() => {}
            (None, _) => return Err(Error::DegreeNotCovered { degree: p }),
            (_, None) => return Err(Error::DegreeNotCovered { degree: q }),
        }
    }
    Ok(total)
}

/// `K^j = H^*_c(F) ⊗ H̃^*(BG)` in degree `j`, for a torsion-free fixed-locus table `F`.
pub fn k_groups(fixed_locus: &GradedGroup, m: u64, max_degree: usize) -> Result<GradedGroup> {
    if let Some(d) = fixed_locus.entries.iter().position(|g| !g.is_torsion_free()) {
        return Err(Error::TorsionFixedLocus { degree: d });
    }
    let bg = bg_reduced_cohomology(m, max_degree);
    let entries = (0..=max_degree)
        .map(|j| kunneth_degree(fixed_locus, &bg, j))
        .collect::<Result<Vec<_>>>()?;
    Ok(GradedGroup::truncated(entries))
}

/// Cohomology of a disjoint union of closed orientable surfaces of the given
/// genera and `points` isolated points.
pub fn curves_and_points(genera: &[usize], points: usize) -> GradedGroup {
    let components = genera.len() + points;
    let h1: usize = genera.iter().map(|g| 2 * g).sum();
    let mut entries = vec![FinAbGroup::free(components), FinAbGroup::free(h1)];
    if !genera.is_empty() {
        entries.push(FinAbGroup::free(genera.len()));
    }
    GradedGroup::finite(entries)
}

/// A homomorphism between canonical groups, as a matrix on canonical
/// generators (columns = images of source generators).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbMap {
    pub source: FinAbGroup,
    pub target: FinAbGroup,
    pub matrix: IntMatrix,
}

#[derive(Deserialize)]
struct RawAbMap {
    source: FinAbGroup,
    target: FinAbGroup,
    matrix: IntMatrix,
}

impl<'de> Deserialize<'de> for AbMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawAbMap::deserialize(d)?;
        // An empty matrix in JSON carries no shape; take it from the groups.
        let matrix = if raw.matrix.rows() == 0 {
            IntMatrix::zeros(raw.target.num_generators(), raw.source.num_generators())
        } else {
            raw.matrix
        };
        AbMap::new(raw.source, raw.target, matrix).map_err(serde::de::Error::custom)
    }
}

fn relation_matrix(g: &FinAbGroup) -> IntMatrix {
    let n = g.num_generators();
    let offset = g.free_rank();
    let mut r = IntMatrix::zeros(n, g.torsion().len());
    for (k, d) in g.torsion().iter().enumerate() {
        r.set(offset + k, k, BigInt::from(d.clone()));
    }
    r
}

impl AbMap {
    /// Checks the matrix shape; well-definedness is checked separately.
    pub fn new(source: FinAbGroup, target: FinAbGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.num_generators() || matrix.cols() != source.num_generators() {
            return Err(Error::DimensionMismatch(format!(
                "map {source} -> {target} needs a {}x{} matrix, got {}x{}",
                target.num_generators(),
                source.num_generators(),
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(Self {
            source,
            target,
            matrix,
        })
    }

    pub fn zero(source: FinAbGroup, target: FinAbGroup) -> Self {
        let matrix = IntMatrix::zeros(target.num_generators(), source.num_generators());
        Self {
            source,
            target,
            matrix,
        }
    }

    pub fn identity(group: FinAbGroup) -> Self {
        let matrix = IntMatrix::identity(group.num_generators());
        Self {
            source: group.clone(),
            target: group,
            matrix,
        }
    }

    /// `None` if well defined, otherwise the offending source generator.
    pub fn ill_defined_generator(&self) -> Option<usize> {
        let src_orders = self.source.generator_orders();
        let tgt_orders = self.target.generator_orders();
        (0..src_orders.len()).find(|&j| {
            let d = &src_orders[j];
            if d.is_zero() {
                return false;
            }
            let d = BigInt::from(d.clone());
            tgt_orders.iter().enumerate().any(|(i, e)| {
                let image = self.matrix.get(i, j) * &d;
                if e.is_zero() {
                    !image.is_zero()
                } else {
                    !image.is_multiple_of(&BigInt::from(e.clone()))
                }
            })
        })
    }

    pub fn is_well_defined(&self) -> bool {
        self.ill_defined_generator().is_none()
    }

    pub fn cokernel(&self) -> FinAbGroup {
        cokernel(&self.matrix.hstack(&relation_matrix(&self.target)))
    }

    /// Basis of the lattice `{x ∈ Z^g : f(x) = 0 in the target}`.
    fn kernel_lattice(&self) -> IntMatrix {
        let g = self.source.num_generators();
        let combined = self.matrix.hstack(&relation_matrix(&self.target));
        let k = kernel_basis(&combined);
        image_basis(&k.select_rows(0..g))
    }
}

impl fmt::Display for AbMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} --{}--> {}", self.source, self.matrix, self.target)
    }
}

/// Exactness data for one interior node of a sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NodeReport {
    /// Position in the sequence; node `k` is the target of map `k - 1`.
    pub node: usize,
    pub group: FinAbGroup,
    /// The composite through this node is zero.
    pub complex: bool,
    /// `ker / im` at the node, present when `complex` holds.
    pub homology: Option<FinAbGroup>,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessReport {
    pub nodes: Vec<NodeReport>,
}

impl ExactnessReport {
    pub fn is_exact(&self) -> bool {
        self.nodes.iter().all(|n| n.exact)
    }

    pub fn failing_nodes(&self) -> Vec<usize> {
        self.nodes.iter().filter(|n| !n.exact).map(|n| n.node).collect()
    }
}

/// Computes `ker(next) / im(prev)` at every interior node.
pub fn exactness_check(maps: &[AbMap]) -> Result<ExactnessReport> {
    for (k, pair) in maps.windows(2).enumerate() {
        if pair[0].target != pair[1].source {
            return Err(Error::NotComposable { index: k, next: k + 1 });
        }
    }
    for (k, f) in maps.iter().enumerate() {
        if let Some(j) = f.ill_defined_generator() {
            return Err(Error::IllFormedMap {
                index: k,
                reason: format!("generator {j} of {} is not sent into the relations of {}", f.source, f.target),
            });
        }
    }
    let nodes = maps
        .windows(2)
        .enumerate()
        .map(|(k, pair)| {
            let (prev, next) = (&pair[0], &pair[1]);
            let group = prev.target.clone();
            let boundaries = prev.matrix.hstack(&relation_matrix(&group));
            let cycles = next.kernel_lattice();
            match solve_in_lattice(&cycles, &boundaries) {
                Ok(coords) => {
                    let homology = cokernel(&coords);
                    NodeReport {
                        node: k + 1,
                        group,
                        complex: true,
                        exact: homology.is_trivial(),
                        homology: Some(homology),
                    }
                }
                Err(Error::NoSolution { .. }) => NodeReport {
                    node: k + 1,
                    group,
                    complex: false,
                    homology: None,
                    exact: false,
                },
                Err(e) => unreachable!("kernel lattice basis has full column rank: {e}"),
            }
        })
        .collect();
    Ok(ExactnessReport { nodes })
}

/// A sequence of maps with a label for every node.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledSequence {
    pub labels: Vec<String>,
    pub maps: Vec<AbMap>,
}

impl LabeledSequence {
    pub fn node_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// The long exact sequence `… → K^{j-1} → H^j_c(X) → H^j_{c,G}(V) → K^j → …`
/// for `V = C^n` with a `Z/m` action fixing only the origin and `X = V/G`,
/// over degrees `1..=2n+2`.
///
/// Boundary maps `K^{2i} → H^{2i+1}_c(X)` are the identity of `Z/m` for
/// `0 < 2i < 2n`. In degree `2n` the map `H^{2n}_c(X) = Z → H^{2n}_{c,G}(V) = Z`
/// is multiplication by `scale`, followed by the map `Z → K^{2n} = Z/m`
/// sending `1` to a generator of the annihilator of `scale`, so the sequence
/// is always a complex. `scale = m` gives the exact sequence.
pub fn representation_sequence(n: usize, m: u64, scale: i64) -> LabeledSequence {
    assert!(n >= 1 && m >= 2, "need n >= 1 and m >= 2");
    let top = 2 * n + 2;
    let hc_x = cone_lens_compact(n, m);
    let hc_v = equivariant_rep_compact(n, m, top);
    let k = bg_reduced_cohomology(m, top);

    let mut labels = vec!["K^0".to_string()];
    let mut groups = vec![FinAbGroup::zero()];
    for j in 1..=top {
        labels.push(format!("H^{j}_c(X)"));
        groups.push(hc_x.get(j).expect("finite table"));
        labels.push(format!("H^{j}_cG(V)"));
        groups.push(hc_v.get(j).expect("covered"));
        labels.push(format!("K^{j}"));
        groups.push(k.get(j).expect("covered"));
    }
    labels.push(format!("H^{}_c(X)", top + 1));
    groups.push(hc_x.get(top + 1).expect("finite table"));

    let annihilator = {
        let g = BigUint::from(scale.unsigned_abs()).gcd(&BigUint::from(m));
        BigInt::from(BigUint::from(m) / g)
    };

    let maps = groups
        .windows(2)
        .enumerate()
        .map(|(idx, pair)| {
            let (src, tgt) = (pair[0].clone(), pair[1].clone());
            if src.is_trivial() || tgt.is_trivial() {
                return AbMap::zero(src, tgt);
            }
            // idx = 3(j-1) + {0: K^{j-1}→H_c, 1: H_c→H_cG, 2: H_cG→K^j}
            let j = idx / 3 + 1;
            let matrix = match idx % 3 {
                0 => IntMatrix::identity(1),
                1 => {
                    debug_assert_eq!(j, 2 * n);
                    IntMatrix::from_rows(&[vec![scale]])
                }
                _ if j == 2 * n => IntMatrix::from_rows(&[vec![annihilator.clone()]]),
                _ => IntMatrix::identity(1),
            };
            AbMap::new(src, tgt, matrix).expect("1x1 maps between cyclic groups")
        })
        .collect();
    LabeledSequence { labels, maps }
}
