//! Cohomology of `Z/m` with coefficients in a lattice with an integral action.
//!
//! Uses the 2-periodic resolution of `Z` over `Z[Z/m]`:
//! `H^0 = A^G`, odd degrees `ker N / im(T - 1)`, positive even degrees
//! `ker(T - 1) / im N`, where `N = 1 + T + … + T^{m-1}`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::abgroup::FinAbGroup;
use crate::error::{Error, Result};
use crate::intlinalg::{kernel_basis, subgroup_quotient, IntMatrix};

/// A free module `Z^n` with the action of a generator `T` satisfying `T^m = I`.
///
/// The action need not have exact order `m`; the trivial action is allowed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GModule {
    m: u64,
    action: IntMatrix,
}

#[derive(Deserialize)]
struct RawGModule {
    m: u64,
    action: IntMatrix,
}

impl<'de> Deserialize<'de> for GModule {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawGModule::deserialize(d)?;
        GModule::new(raw.m, raw.action).map_err(serde::de::Error::custom)
    }
}

impl GModule {
    pub fn new(m: u64, action: IntMatrix) -> Result<Self> {
        if m < 1 {
            return Err(Error::InvalidGroupOrder { m, min: 1 });
        }
        if !action.is_square() {
            return Err(Error::NotSquare {
                rows: action.rows(),
                cols: action.cols(),
            });
        }
        if !action.pow(m).is_identity() {
            return Err(Error::ActionOrder { m });
        }
        Ok(Self { m, action })
    }

    /// `Z^n` with trivial action.
    pub fn trivial(m: u64, rank: usize) -> Result<Self> {
        Self::new(m, IntMatrix::identity(rank))
    }

    pub fn order(&self) -> u64 {
        self.m
    }

    pub fn rank(&self) -> usize {
        self.action.rows()
    }

    pub fn action(&self) -> &IntMatrix {
        &self.action
    }

    pub fn is_trivial_action(&self) -> bool {
        self.action.is_identity()
    }

    /// `T - I`.
    pub fn augmentation_matrix(&self) -> IntMatrix {
        &self.action - &IntMatrix::identity(self.rank())
    }
}

/// `N = Σ_{i<m} T^i`.
pub fn norm_matrix(a: &GModule) -> IntMatrix {
    let n = a.rank();
    let mut sum = IntMatrix::zeros(n, n);
    let mut power = IntMatrix::identity(n);
    for _ in 0..a.m {
        sum = &sum + &power;
        power = &power * &a.action;
    }
    sum
}

/// `A^G`, always free.
pub fn invariants(a: &GModule) -> FinAbGroup {
    FinAbGroup::free(kernel_basis(&a.augmentation_matrix()).cols())
}

/// `H^i(Z/m, A)`.
pub fn group_cohomology(a: &GModule, i: usize) -> FinAbGroup {
    if i == 0 {
        return invariants(a);
    }
    let norm = norm_matrix(a);
    let aug = a.augmentation_matrix();
    let (cycles, boundaries) = if i % 2 == 1 { (norm, aug) } else { (aug, norm) };
    // im(T-1) ⊆ ker N and im N ⊆ ker(T-1) because T^m = I.
    subgroup_quotient(&kernel_basis(&cycles), &boundaries)
        .expect("boundaries lie in cycles for a module with T^m = I")
}

/// Tate `Ĥ^0 = A^G / N·A`.
pub fn tate_h0(a: &GModule) -> FinAbGroup {
    subgroup_quotient(&kernel_basis(&a.augmentation_matrix()), &norm_matrix(a))
        .expect("N·A lies in A^G for a module with T^m = I")
}

/// The permutation module `Z[G/H]` with `[G:H] = index`.
pub fn induced_module(m: u64, index: u64) -> Result<GModule> {
    if index == 0 || !m.is_multiple_of(index) {
        return Err(Error::InvalidIndex { index, m });
    }
    let k = index as usize;
    let mut shift = IntMatrix::zeros(k, k);
    for j in 0..k {
        shift.set((j + 1) % k, j, 1);
    }
    GModule::new(m, shift)
}

/// The sign character `ε`: `Z` with the generator acting by `-1`.
pub fn character_eps(m: u64) -> Result<GModule> {
    if !m.is_multiple_of(2) {
        return Err(Error::InvalidOrder { m });
    }
    GModule::new(m, IntMatrix::from_rows(&[vec![-1]]))
}

/// Coefficients (lowest degree first) of the cyclotomic polynomial `Φ_m`.
pub fn cyclotomic_polynomial(m: u64) -> Vec<BigInt> {
    assert!(m >= 1, "cyclotomic polynomial of order 0");
    // x^m - 1
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = -BigInt::one();
    num[m as usize] = BigInt::one();
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        num = divide_monic(&num, &cyclotomic_polynomial(d));
    }
    num
}

/// Exact division by a monic polynomial.
fn divide_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut q = vec![BigInt::zero(); num.len() - dd];
    for k in (0..q.len()).rev() {
        let c = rem[k + dd].clone();
        for (i, x) in den.iter().enumerate() {
            rem[k + i] -= &c * x;
        }
        q[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    q
}

/// `Z[ζ_m]` as the companion matrix of `Φ_m`, of rank `φ(m)`.
pub fn cyclotomic_module(m: u64) -> Result<GModule> {
    if m < 1 {
        return Err(Error::InvalidGroupOrder { m, min: 1 });
    }
    let phi = cyclotomic_polynomial(m);
    let n = phi.len() - 1;
    let mut c = IntMatrix::zeros(n, n);
    for i in 1..n {
        c.set(i, i - 1, 1);
    }
    for (i, coeff) in phi.iter().take(n).enumerate() {
        c.set(i, n - 1, -coeff);
    }
    GModule::new(m, c)
}

pub fn direct_sum_modules(a: &GModule, b: &GModule) -> Result<GModule> {
    if a.m != b.m {
        return Err(Error::OrderMismatch {
            left: a.m,
            right: b.m,
        });
    }
    Ok(GModule {
        m: a.m,
        action: a.action.block_diag(&b.action),
    })
}
