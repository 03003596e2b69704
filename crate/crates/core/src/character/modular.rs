//! Small prime-field linear algebra used by the modular character-table method.

/// Arithmetic in `F_p` for `p < 2^31`.
#[derive(Clone, Copy, Debug)]
pub struct PrimeField {
    pub p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        debug_assert!(p < (1 << 31));
        PrimeField { p }
    }

    pub fn reduce_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn neg(&self, a: u64) -> u64 {
        (self.p - a) % self.p
    }

    pub fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverse of zero mod {}", self.p);
        self.pow(a, self.p - 2)
    }

    /// Element of multiplicative order exactly `n`; `n` must divide `p − 1`.
    pub fn root_of_unity(&self, n: u64) -> u64 {
        assert_eq!((self.p - 1) % n, 0);
        let g = self.primitive_root();
        self.pow(g, (self.p - 1) / n)
    }

    pub fn primitive_root(&self) -> u64 {
        let factors = prime_factors(self.p - 1);
        (2..self.p)
            .find(|&g| factors.iter().all(|&q| self.pow(g, (self.p - 1) / q) != 1))
            .expect("F_p^* is cyclic")
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Primes `p ≡ 1 (mod modulus)` with `p > lower`, ascending.
pub fn admissible_primes(modulus: u64, lower: u64) -> impl Iterator<Item = u64> {
    let start = (lower / modulus + 1) * modulus + 1;
    (0..)
        .map(move |k| start + k * modulus)
        .filter(|&p| is_prime(p))
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(f: &PrimeField, rows: &mut Vec<Vec<u64>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(rows[r][col]);
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][col] != 0 {
                let factor = rows[i][col];
                for c in 0..ncols {
                    let delta = f.mul(factor, rows[r][c]);
                    rows[i][c] = f.sub(rows[i][c], delta);
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of the right nullspace `{x : A x = 0}` of a `d × d` matrix.
pub fn nullspace(f: &PrimeField, a: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let d = a.first().map_or(0, Vec::len);
    let mut m = a.to_vec();
    let pivots = rref(f, &mut m);
    let free: Vec<usize> = (0..d).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; d];
            v[fc] = 1;
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = f.neg(row[fc]);
            }
            v
        })
        .collect()
}

/// Characteristic polynomial `det(x·Id − A)` (lowest degree first) via
/// reduction to upper Hessenberg form.
pub fn charpoly(f: &PrimeField, a: &[Vec<u64>]) -> Vec<u64> {
    let n = a.len();
    let mut h = a.to_vec();
    for col in 0..n.saturating_sub(2) {
        let Some(piv) = (col + 1..n).find(|&i| h[i][col] != 0) else {
            continue;
        };
        if piv != col + 1 {
            h.swap(piv, col + 1);
            for row in h.iter_mut() {
                row.swap(piv, col + 1);
            }
        }
        let inv = f.inv(h[col + 1][col]);
        for i in col + 2..n {
            if h[i][col] == 0 {
                continue;
            }
            let factor = f.mul(h[i][col], inv);
            // row_i -= factor * row_{col+1}
            for c in 0..n {
                let delta = f.mul(factor, h[col + 1][c]);
                h[i][c] = f.sub(h[i][c], delta);
            }
            // col_{col+1} += factor * col_i
            for row in h.iter_mut() {
                let delta = f.mul(factor, row[i]);
                row[col + 1] = f.add(row[col + 1], delta);
            }
        }
    }
    // p_k = charpoly of the leading k×k block.
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 1..=n {
        let i = k - 1;
        // (x − h_ii) p_{k−1}
        let prev = &polys[k - 1];
        let mut pk = vec![0u64; k + 1];
        for (d, &c) in prev.iter().enumerate() {
            pk[d + 1] = f.add(pk[d + 1], c);
            pk[d] = f.sub(pk[d], f.mul(h[i][i], c));
        }
        // − Σ_{m<i} h_{m,i} (Π_{j=m+1}^{i} h_{j,j−1}) p_m
        let mut sub_prod = 1u64;
        for m in (0..i).rev() {
            sub_prod = f.mul(sub_prod, h[m + 1][m]);
            if sub_prod == 0 {
                break;
            }
            let coef = f.mul(h[m][i], sub_prod);
            for (d, &c) in polys[m].iter().enumerate() {
                pk[d] = f.sub(pk[d], f.mul(coef, c));
            }
        }
        polys.push(pk);
    }
    polys.pop().unwrap()
}

pub fn eval_poly(f: &PrimeField, poly: &[u64], x: u64) -> u64 {
    poly.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_roots() {
        assert!(is_prime(73));
        assert!(!is_prime(91));
        let p: Vec<u64> = admissible_primes(12, 10).take(3).collect();
        assert_eq!(p, vec![13, 37, 61]);
        let f = PrimeField::new(73);
        let w = f.root_of_unity(24);
        assert_eq!(f.pow(w, 24), 1);
        assert!((1..24).all(|k| f.pow(w, k) != 1));
    }

    #[test]
    fn charpoly_matches_determinant_expansion() {
        let f = PrimeField::new(101);
        let a = vec![vec![2, 1, 0], vec![3, 4, 5], vec![7, 0, 6]];
        let cp = charpoly(&f, &a);
        // trace 12, det = 2(24) - 1(18 - 35) = 48 + 17 = 65
        assert_eq!(cp[3], 1);
        assert_eq!(cp[2], f.neg(12));
        assert_eq!(cp[0], f.neg(65));
        // sum of principal 2x2 minors: (8-3) + (12-0) + (24-0) = 41
        assert_eq!(cp[1], 41);
    }

    #[test]
    fn nullspace_dimension() {
        let f = PrimeField::new(13);
        let a = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 0, 0]];
        let ns = nullspace(&f, &a);
        assert_eq!(ns.len(), 2);
        for v in ns {
            for row in &a {
                let s = row.iter().zip(&v).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)));
                assert_eq!(s, 0);
            }
        }
    }
}
