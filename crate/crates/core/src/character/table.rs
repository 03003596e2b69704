//! Exact character tables by the Dixon–Schneider method.
//!
//! The class sums `K_j` act on the class algebra through the structure
//! constants `K_j K_l = Σ_m a_{jlm} K_m`. Each irreducible `χ` yields a common
//! eigenvector `ω_χ(K_m) = |C_m| χ(g_m) / χ(1)` of all these matrices. The
//! eigenspaces are split over `F_p` with `p ≡ 1 (mod exp W)`, the degrees are
//! recovered from the norm of `ω_χ`, and each value is lifted to `Q(ζ_e)` by
//! recovering the eigenvalue multiplicities of `ρ_χ(g)` with a discrete
//! Fourier transform over the powers of `g`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::modular::{admissible_primes, charpoly, eval_poly, nullspace, rref, PrimeField};
use crate::arith::{Cyclotomic, Rational};
use crate::error::CharacterError;
use crate::group::ReflectionGroup;

/// How many admissible primes to try before giving up.
const MAX_PRIMES: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    pub group: String,
    pub class_sizes: Vec<u64>,
    /// Element order of each class.
    pub class_orders: Vec<u64>,
    pub degrees: Vec<u64>,
    pub rows: Vec<Vec<String>>,
}

/// Values of a class function, indexed by conjugacy class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    pub values: Vec<Cyclotomic>,
}

impl ClassFunction {
    pub fn new(values: Vec<Cyclotomic>) -> Self {
        ClassFunction { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value at the identity class.
    pub fn degree(&self) -> &Cyclotomic {
        &self.values[0]
    }

    /// Value-wise complex conjugate.
    pub fn conjugate(&self) -> Self {
        ClassFunction::new(self.values.iter().map(Cyclotomic::conjugate).collect())
    }

    /// `g ↦ χ(g⁻¹)` via the inverse-class map.
    pub fn permute_inverse(&self, inverse_class: &[usize]) -> Self {
        ClassFunction::new(inverse_class.iter().map(|&k| self.values[k].clone()).collect())
    }
}

/// `(1/|W|) Σ_k |C_k| a(g_k) conj(b(g_k))`
pub fn inner_product(a: &ClassFunction, b: &ClassFunction, class_sizes: &[u64], order: u64) -> Cyclotomic {
    let sum: Cyclotomic = a
        .values
        .iter()
        .zip(&b.values)
        .zip(class_sizes)
        .map(|((x, y), &s)| (x * &y.conjugate()).scale(&Rational::from_integer(BigInt::from(s))))
        .sum();
    sum.scale(&Rational::new(BigInt::one(), BigInt::from(order)))
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct OrthogonalityFailure {
    pub kind: String,
    pub i: usize,
    pub j: usize,
    pub value: String,
}

#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub rows: Vec<ClassFunction>,
    pub degrees: Vec<u64>,
    pub class_sizes: Vec<u64>,
    pub class_reps: Vec<usize>,
    pub inverse_class: Vec<usize>,
    pub group_order: u64,
    /// Prime used for the modular splitting.
    pub prime: u64,
}

impl CharacterTable {
    pub fn compute(group: &ReflectionGroup) -> Result<Self, CharacterError> {
        let exponent = group.exponent();
        let bound = (2.0 * (group.order() as f64).sqrt()).floor() as u64;
        let mut tried = Vec::new();
        for p in admissible_primes(exponent, bound).take(MAX_PRIMES) {
            tried.push(p);
            if let Some(table) = Self::try_prime(group, p) {
                if table.row_orthogonality_failures().is_empty()
                    && table.column_orthogonality_failures().is_empty()
                {
                    return Ok(table);
                }
            }
        }
        Err(CharacterError::PrimesExhausted { tried })
    }

    fn try_prime(group: &ReflectionGroup, p: u64) -> Option<Self> {
        let f = PrimeField::new(p);
        let classes = group.classes();
        let k = classes.len();
        let sizes = classes.sizes();
        let constants = structure_constants(group);

        // Common eigenspaces of all M_j, (M_j)_{l,m} = a_{jlm}.
        let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..k)
            .map(|i| (0..k).map(|j| u64::from(i == j)).collect())
            .collect()];
        for j in 1..k {
            if spaces.iter().all(|s| s.len() == 1) {
                break;
            }
            let m: Vec<Vec<u64>> = constants[j]
                .iter()
                .map(|row| row.iter().map(|&x| x % p).collect())
                .collect();
            let mut next = Vec::new();
            for space in spaces {
                if space.len() == 1 {
                    next.push(space);
                    continue;
                }
                next.extend(split_space(&f, &m, space)?);
            }
            spaces = next;
        }
        if spaces.iter().any(|s| s.len() != 1) || spaces.len() != k {
            return None;
        }

        let order = group.order();
        let order_mod = order % p;
        let max_degree = (order as f64).sqrt().floor() as u64 + 1;
        let e = group.exponent();
        let w = f.root_of_unity(e);
        let e_inv = f.inv(e % p);
        let mut rows = Vec::with_capacity(k);
        let mut degrees = Vec::with_capacity(k);
        for space in spaces {
            let v = &space[0];
            if v[0] == 0 {
                return None;
            }
            let norm0 = f.inv(v[0]);
            let omega: Vec<u64> = v.iter().map(|&x| f.mul(x, norm0)).collect();
            // |W| / χ(1)^2 = Σ_k ω_k ω_{k*} / |C_k|
            let s = (0..k).fold(0, |acc, c| {
                let term = f.mul(
                    f.mul(omega[c], omega[classes.inverse_class[c]]),
                    f.inv(sizes[c] % p),
                );
                f.add(acc, term)
            });
            if s == 0 {
                return None;
            }
            let deg_sq = f.mul(order_mod, f.inv(s));
            let degree = (1..=max_degree).find(|&d| (d * d) % p == deg_sq)?;
            let values_mod: Vec<u64> = (0..k)
                .map(|c| f.mul(f.mul(omega[c], degree % p), f.inv(sizes[c] % p)))
                .collect();
            let mut values = Vec::with_capacity(k);
            for c in 0..k {
                let powers = &classes.power_map[c];
                let mut dense = vec![Rational::zero(); e as usize];
                let mut total = 0u64;
                for (jexp, slot) in dense.iter_mut().enumerate() {
                    // m_j = (1/e) Σ_t χ(g^t) ω^{−jt}
                    let mut acc = 0u64;
                    for (t, &pc) in powers.iter().enumerate() {
                        let exp = (e - (jexp as u64 * t as u64) % e) % e;
                        acc = f.add(acc, f.mul(values_mod[pc], f.pow(w, exp)));
                    }
                    let mult = f.mul(acc, e_inv);
                    if mult > degree {
                        return None;
                    }
                    total += mult;
                    *slot = Rational::from_integer(BigInt::from(mult));
                }
                if total != degree {
                    return None;
                }
                values.push(Cyclotomic::from_dense(e as u32, dense));
            }
            rows.push(ClassFunction::new(values));
            degrees.push(degree);
        }

        // trivial first, then by degree; ties keep discovery order
        let mut order_idx: Vec<usize> = (0..k).collect();
        let is_trivial = |r: &ClassFunction| r.values.iter().all(Cyclotomic::is_one);
        order_idx.sort_by_key(|&i| (!is_trivial(&rows[i]), degrees[i]));
        let rows = order_idx.iter().map(|&i| rows[i].clone()).collect();
        let degrees = order_idx.iter().map(|&i| degrees[i]).collect();
        Some(CharacterTable {
            rows,
            degrees,
            class_sizes: sizes,
            class_reps: (0..k).map(|c| classes.representative(c)).collect(),
            inverse_class: classes.inverse_class.clone(),
            group_order: order,
            prime: p,
        })
    }

    /// Printable form; values use the `a0 + a1*z(m) + …` rendering.
    pub fn report(&self, group: &ReflectionGroup) -> TableReport {
        TableReport {
            group: group.name(),
            class_sizes: self.class_sizes.clone(),
            class_orders: self.class_reps.iter().map(|&r| group.element_order(r)).collect(),
            degrees: self.degrees.clone(),
            rows: self
                .rows
                .iter()
                .map(|r| r.values.iter().map(ToString::to_string).collect())
                .collect(),
        }
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn inner_product(&self, a: &ClassFunction, b: &ClassFunction) -> Cyclotomic {
        inner_product(a, b, &self.class_sizes, self.group_order)
    }

    /// Row index of `χ*`, matched through value-wise conjugation.
    pub fn conjugate_index(&self, i: usize) -> Option<usize> {
        let conj = self.rows[i].conjugate();
        self.rows.iter().position(|r| *r == conj)
    }

    /// Row index of a class function, if it is one of the irreducibles.
    pub fn find_row(&self, f: &ClassFunction) -> Option<usize> {
        self.rows.iter().position(|r| r == f)
    }

    /// Violations of `⟨χ_i, χ_j⟩ = δ_ij`.
    pub fn row_orthogonality_failures(&self) -> Vec<OrthogonalityFailure> {
        let mut out = Vec::new();
        for i in 0..self.rows.len() {
            for j in i..self.rows.len() {
                let v = self.inner_product(&self.rows[i], &self.rows[j]);
                let expected = if i == j { Cyclotomic::one() } else { Cyclotomic::zero() };
                if v != expected {
                    out.push(OrthogonalityFailure {
                        kind: "row".into(),
                        i,
                        j,
                        value: v.to_string(),
                    });
                }
            }
        }
        out
    }

    /// Violations of `Σ_χ χ(g_k) conj(χ(g_l)) = δ_kl |W| / |C_k|`.
    pub fn column_orthogonality_failures(&self) -> Vec<OrthogonalityFailure> {
        let mut out = Vec::new();
        let k = self.class_sizes.len();
        for a in 0..k {
            for b in a..k {
                let v: Cyclotomic = self
                    .rows
                    .iter()
                    .map(|r| &r.values[a] * &r.values[b].conjugate())
                    .sum();
                let expected = if a == b {
                    Cyclotomic::from_int((self.group_order / self.class_sizes[a]) as i64)
                } else {
                    Cyclotomic::zero()
                };
                if v != expected {
                    out.push(OrthogonalityFailure {
                        kind: "column".into(),
                        i: a,
                        j: b,
                        value: v.to_string(),
                    });
                }
            }
        }
        out
    }
}

/// `a[j][l][m] = #{x ∈ C_j : x⁻¹ g_m ∈ C_l}`.
pub fn structure_constants(group: &ReflectionGroup) -> Vec<Vec<Vec<u64>>> {
    let classes = group.classes();
    let k = classes.len();
    let mut a = vec![vec![vec![0u64; k]; k]; k];
    for m in 0..k {
        let z = classes.representative(m);
        let right = group.right_multiplication(z);
        for x in 0..group.len() {
            let j = classes.class_of[x];
            let l = classes.class_of[right[group.inverse(x)]];
            a[j][l][m] += 1;
        }
    }
    a
}

/// Splits an `M`-invariant subspace (rows in RREF) into eigenspaces of `M`.
/// Returns `None` if `M` is not diagonalizable over `F_p` on the space.
fn split_space(f: &PrimeField, m: &[Vec<u64>], basis: Vec<Vec<u64>>) -> Option<Vec<Vec<Vec<u64>>>> {
    let d = basis.len();
    let k = m.len();
    let pivots: Vec<usize> = basis
        .iter()
        .map(|row| row.iter().position(|&x| x != 0).unwrap())
        .collect();
    // restriction: column i holds the coordinates of M b_i
    let mut restricted = vec![vec![0u64; d]; d];
    for (i, b) in basis.iter().enumerate() {
        let image: Vec<u64> = (0..k)
            .map(|l| {
                m[l].iter()
                    .zip(b)
                    .fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
            })
            .collect();
        for (r, &pc) in pivots.iter().enumerate() {
            restricted[r][i] = image[pc];
        }
    }
    let cp = charpoly(f, &restricted);
    let roots: Vec<u64> = (0..f.p).filter(|&x| eval_poly(f, &cp, x) == 0).collect();
    if roots.len() == 1 {
        return Some(vec![basis]);
    }
    let mut out = Vec::new();
    let mut total = 0;
    for lambda in roots {
        let shifted: Vec<Vec<u64>> = (0..d)
            .map(|r| {
                (0..d)
                    .map(|c| {
                        if r == c {
                            f.sub(restricted[r][c], lambda)
                        } else {
                            restricted[r][c]
                        }
                    })
                    .collect()
            })
            .collect();
        let coords = nullspace(f, &shifted);
        total += coords.len();
        let mut vectors: Vec<Vec<u64>> = coords
            .iter()
            .map(|c| {
                (0..k)
                    .map(|col| {
                        c.iter()
                            .zip(&basis)
                            .fold(0, |acc, (&x, b)| f.add(acc, f.mul(x, b[col])))
                    })
                    .collect()
            })
            .collect();
        rref(f, &mut vectors);
        out.push(vectors);
    }
    (total == d).then_some(out)
}
