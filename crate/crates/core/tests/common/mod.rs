#![allow(dead_code)]

use eqcoh::cyclic_cohomology::{
    character_eps, cyclotomic_module, direct_sum_modules, induced_module, GModule,
};
use eqcoh::equichern::{bg_mul, BgPolynomial};
use eqcoh::{FinAbGroup, IntMatrix};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn divisors(m: u64) -> Vec<u64> {
    (1..=m).filter(|d| m % d == 0).collect()
}

/// A unimodular `P` and its inverse, built from `steps` elementary operations.
pub fn random_unimodular(rng: &mut ChaCha8Rng, n: usize, steps: usize) -> (IntMatrix, IntMatrix) {
    let mut p = IntMatrix::identity(n);
    let mut q = IntMatrix::identity(n);
    if n < 2 {
        return (p, q);
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c: i64 = rng.gen_range(-2..=2);
        let mut e = IntMatrix::identity(n);
        e.set(i, j, c);
        let mut e_inv = IntMatrix::identity(n);
        e_inv.set(i, j, -c);
        p = &e * &p;
        q = &q * &e_inv;
    }
    (p, q)
}

pub fn conjugate(a: &GModule, p: &IntMatrix, q: &IntMatrix) -> GModule {
    GModule::new(a.order(), &(p * a.action()) * q).expect("conjugate keeps the order")
}

fn lift(m: u64, a: GModule) -> GModule {
    GModule::new(m, a.action().clone()).expect("order divides m")
}

/// One indecomposable-ish summand for `Z/m`: trivial, sign, permutation or
/// cyclotomic, each for a divisor of `m`.
pub fn random_block(rng: &mut ChaCha8Rng, m: u64) -> GModule {
    let divs = divisors(m);
    match rng.gen_range(0..4) {
        0 => GModule::trivial(m, 1).unwrap(),
        1 if m % 2 == 0 => character_eps(m).unwrap(),
        2 => {
            let d = divs[rng.gen_range(0..divs.len())];
            induced_module(m, d).unwrap()
        }
        _ => {
            let d = divs[rng.gen_range(0..divs.len())];
            lift(m, cyclotomic_module(d).unwrap())
        }
    }
}

/// A random module of rank at most `max_rank`, conjugated into a random basis.
pub fn random_module(rng: &mut ChaCha8Rng, m: u64, max_rank: usize) -> GModule {
    let mut a = random_block(rng, m);
    loop {
        let b = random_block(rng, m);
        if a.rank() + b.rank() > max_rank {
            break;
        }
        a = direct_sum_modules(&a, &b).unwrap();
        if rng.gen_bool(0.4) {
            break;
        }
    }
    let (p, q) = random_unimodular(rng, a.rank(), 3 * a.rank());
    conjugate(&a, &p, &q)
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-bound..=bound)).collect())
        .collect();
    if rows == 0 {
        IntMatrix::zeros(0, cols)
    } else {
        IntMatrix::from_rows(&data)
    }
}

/// Rank over `Q` by fraction-free elimination.
pub fn rank_q(a: &IntMatrix) -> usize {
    let mut rows = a.to_rows();
    let cols = a.cols();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        for r in rank + 1..rows.len() {
            let f = rows[r][c].clone();
            if f.is_zero() {
                continue;
            }
            for k in 0..cols {
                let v = &rows[r][k] * &pivot - &f * &rows[rank][k];
                rows[r][k] = v;
            }
        }
        rank += 1;
    }
    rank
}

/// Rank over `F_p`.
pub fn rank_mod_p(a: &IntMatrix, p: u64) -> usize {
    let pb = BigInt::from(p);
    let mut rows: Vec<Vec<u64>> = a
        .to_rows()
        .iter()
        .map(|r| r.iter().map(|x| x.mod_floor(&pb).to_u64().unwrap()).collect())
        .collect();
    let cols = a.cols();
    let inv = |x: u64| (1..p).find(|y| x * y % p == 1).unwrap();
    let mut rank = 0;
    for c in 0..cols {
        let Some(r0) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, r0);
        let s = inv(rows[rank][c]);
        for k in 0..cols {
            rows[rank][k] = rows[rank][k] * s % p;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c];
                for k in 0..cols {
                    rows[r][k] = (rows[r][k] + (p - f) * rows[rank][k]) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut acc = BigInt::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = &m[0][j] * det(&minor);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Smith diagonal from determinantal divisors: `d_k = D_k / D_{k-1}` where
/// `D_k` is the gcd of all `k x k` minors.
pub fn determinantal_diagonal(a: &IntMatrix) -> Vec<BigInt> {
    let rows = a.to_rows();
    let kmax = a.rows().min(a.cols());
    let mut prev = BigInt::one();
    let mut out = Vec::new();
    for k in 1..=kmax {
        let mut g = BigInt::zero();
        for rs in subsets(a.rows(), k) {
            for cs in subsets(a.cols(), k) {
                let sub: Vec<Vec<BigInt>> =
                    rs.iter().map(|&r| cs.iter().map(|&c| rows[r][c].clone()).collect()).collect();
                g = g.gcd(&det(&sub));
            }
        }
        if g.is_zero() {
            out.extend(std::iter::repeat_n(BigInt::zero(), kmax - out.len()));
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

/// Elements of `Z/o_1 x ... x Z/o_k` as coordinate tuples.
fn elements(orders: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for &o in orders {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..o).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn killed_by(x: &[u64], orders: &[u64], k: u64) -> bool {
    x.iter().zip(orders).all(|(&c, &o)| (c * k) % o == 0)
}

/// Homomorphisms `Z/a_1 x ... → Z/b_1 x ...`, by brute force, as tuples of
/// generator images (flattened).
pub fn brute_homs(a: &[u64], b: &[u64]) -> Vec<Vec<u64>> {
    let targets = elements(b);
    let mut homs = vec![vec![]];
    for &o in a {
        let allowed: Vec<&Vec<u64>> = targets.iter().filter(|y| killed_by(y, b, o)).collect();
        homs = homs
            .into_iter()
            .flat_map(|h: Vec<u64>| {
                allowed.iter().map(move |y| {
                    let mut w = h.clone();
                    w.extend(y.iter());
                    w
                })
            })
            .collect();
    }
    homs
}

/// `|{ f in Hom(A, B) : k f = 0 }|` for each `k` in `1..=kmax`.
pub fn brute_hom_profile(a: &[u64], b: &[u64], kmax: u64) -> Vec<usize> {
    let homs = brute_homs(a, b);
    let coord_orders: Vec<u64> = a.iter().flat_map(|_| b.iter().copied()).collect();
    (1..=kmax)
        .map(|k| homs.iter().filter(|h| killed_by(h, &coord_orders, k)).count())
        .collect()
}

/// `|G[k]|` computed from a canonical torsion list.
pub fn group_profile(g: &FinAbGroup, kmax: u64) -> Vec<usize> {
    let t = g.torsion_u64().unwrap();
    (1..=kmax)
        .map(|k| t.iter().map(|&d| d.gcd(&k) as usize).product())
        .collect()
}

pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Sorted multiset of prime powers `p^e` in `Z/o_1 ⊕ ... ⊕ Z/o_k`.
pub fn elementary_divisors(orders: &[u64]) -> Vec<u64> {
    let mut out: Vec<u64> = orders
        .iter()
        .flat_map(|&o| factorize(o).into_iter().map(|(p, e)| p.pow(e)))
        .collect();
    out.sort_unstable();
    out
}

pub fn canonical_elementary_divisors(g: &FinAbGroup) -> Vec<u64> {
    elementary_divisors(&g.torsion_u64().unwrap())
}

pub fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn order_u64(g: &FinAbGroup) -> Option<u64> {
    g.order().map(|o: BigUint| o.to_u64().unwrap())
}

pub fn abs(x: &BigInt) -> BigInt {
    x.abs()
}

/// `Σ_i c_i (jx)^{n-i}` by multiplying out `(jx)^k` one factor at a time.
pub fn expand_top_chern(chern: &[i64], j: i64, m: u64) -> BgPolynomial {
    let n = chern.len() - 1;
    let jx = BgPolynomial::new(m, 0, &[j]).unwrap();
    let mut acc = BgPolynomial::constant(m, 0).unwrap();
    for (i, &c) in chern.iter().enumerate() {
        let mut term = BgPolynomial::constant(m, c).unwrap();
        for _ in 0..n - i {
            term = bg_mul(&term, &jx).unwrap();
        }
        acc = add(&acc, &term);
    }
    acc
}

fn add(p: &BgPolynomial, q: &BgPolynomial) -> BgPolynomial {
    let len = p.x_degree().unwrap_or(0).max(q.x_degree().unwrap_or(0));
    let higher: Vec<i64> = (1..=len)
        .map(|k| (p.coefficient(k) + q.coefficient(k)) as i64)
        .collect();
    BgPolynomial::new(p.modulus(), p.constant_term() + q.constant_term(), &higher).unwrap()
}
