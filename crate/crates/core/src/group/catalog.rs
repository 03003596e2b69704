//! Catalog of irreducible reflection groups given by distinguished generating
//! reflections.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{rat, CMatrix, Cyclotomic};
use crate::error::GroupError;

/// Parsed catalog identifier.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupName {
    A(usize),
    B(usize),
    D(usize),
    G2,
    F4,
    H3,
    /// Dihedral group of order `2m`.
    I2(u32),
    /// Imprimitive group `G(de, e, n)`.
    Imprimitive { de: u32, e: u32, n: usize },
    /// Shephard–Todd `G_4`.
    St4,
}

impl fmt::Display for GroupName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupName::A(n) => write!(f, "A{n}"),
            GroupName::B(n) => write!(f, "B{n}"),
            GroupName::D(n) => write!(f, "D{n}"),
            GroupName::G2 => write!(f, "G2"),
            GroupName::F4 => write!(f, "F4"),
            GroupName::H3 => write!(f, "H3"),
            GroupName::I2(m) => write!(f, "I2({m})"),
            GroupName::Imprimitive { de, e, n } => write!(f, "G({de},{e},{n})"),
            GroupName::St4 => write!(f, "ST4"),
        }
    }
}

impl FromStr for GroupName {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || GroupError::UnknownName(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        match t.as_str() {
            "G2" => return Ok(GroupName::G2),
            "F4" => return Ok(GroupName::F4),
            "H3" => return Ok(GroupName::H3),
            "ST4" => return Ok(GroupName::St4),
            _ => {}
        }
        if let Some(inner) = t.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
            return inner.parse().map(GroupName::I2).map_err(|_| unknown());
        }
        if let Some(inner) = t.strip_prefix("G(").and_then(|r| r.strip_suffix(')')) {
            let parts: Vec<&str> = inner.split(',').collect();
            if parts.len() != 3 {
                return Err(unknown());
            }
            let de = parts[0].parse().map_err(|_| unknown())?;
            let e = parts[1].parse().map_err(|_| unknown())?;
            let n = parts[2].parse().map_err(|_| unknown())?;
            return Ok(GroupName::Imprimitive { de, e, n });
        }
        let (head, tail) = t.split_at(t.len().min(1));
        let n: usize = tail.parse().map_err(|_| unknown())?;
        match head {
            "A" => Ok(GroupName::A(n)),
            "B" => Ok(GroupName::B(n)),
            "D" => Ok(GroupName::D(n)),
            _ => Err(unknown()),
        }
    }
}

/// A catalog group: distinguished generators plus the data the engine checks
/// its closure against.
#[derive(Clone, Debug)]
pub struct GroupSpec {
    pub name: GroupName,
    pub rank: usize,
    /// Common cyclotomic order of all generator entries.
    pub field_order: u32,
    /// Generating reflections, in the order whose product is the Coxeter element.
    pub generators: Vec<CMatrix>,
    pub expected_order: u64,
    pub expected_degrees: Vec<u64>,
}

fn c(v: i64) -> Cyclotomic {
    Cyclotomic::from_int(v)
}

fn factorial(n: usize) -> Option<u64> {
    (1..=n as u64).try_fold(1u64, |acc, k| acc.checked_mul(k))
}

fn unsupported(name: &GroupName, reason: &str) -> GroupError {
    GroupError::Unsupported {
        name: name.to_string(),
        reason: reason.to_string(),
    }
}

/// Simple reflections in the root basis: `s_i(α_j) = α_j − A_ij α_i`.
fn cartan_reflections(cartan: &[Vec<Cyclotomic>], order: u32) -> Vec<CMatrix> {
    let n = cartan.len();
    (0..n)
        .map(|i| {
            let rows = (0..n)
                .map(|r| {
                    (0..n)
                        .map(|col| {
                            let delta = c(i64::from(r == col));
                            if r == i {
                                delta - cartan[i][col].clone()
                            } else {
                                delta
                            }
                        })
                        .collect()
                })
                .collect();
            CMatrix::from_rows_in(order, rows)
        })
        .collect()
}

/// Integer Cartan matrix from a list of `(i, j, A_ij, A_ji)` bonds.
fn cartan_from_bonds(n: usize, bonds: &[(usize, usize, Cyclotomic, Cyclotomic)]) -> Vec<Vec<Cyclotomic>> {
    let mut a = vec![vec![c(0); n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = c(2);
    }
    for (i, j, aij, aji) in bonds {
        a[*i][*j] = aij.clone();
        a[*j][*i] = aji.clone();
    }
    a
}

fn chain(n: usize) -> Vec<(usize, usize, Cyclotomic, Cyclotomic)> {
    (0..n.saturating_sub(1)).map(|i| (i, i + 1, c(-1), c(-1))).collect()
}

/// Permutation matrix of the transposition `(i, i+1)` acting on `n` coordinates.
fn transposition(n: usize, i: usize, order: u32) -> CMatrix {
    let rows = (0..n)
        .map(|r| {
            (0..n)
                .map(|col| {
                    let target = match r {
                        _ if r == i => i + 1,
                        _ if r == i + 1 => i,
                        _ => r,
                    };
                    c(i64::from(col == target))
                })
                .collect()
        })
        .collect();
    CMatrix::from_rows_in(order, rows)
}

fn diagonal_reflection(n: usize, root: Cyclotomic, order: u32) -> CMatrix {
    let rows = (0..n)
        .map(|r| {
            (0..n)
                .map(|col| match (r, col) {
                    (0, 0) => root.clone(),
                    _ => c(i64::from(r == col)),
                })
                .collect()
        })
        .collect();
    CMatrix::from_rows_in(order, rows)
}

/// `[[0, ζ^{-1}], [ζ, 0]]` on the first two coordinates.
fn twisted_transposition(n: usize, zeta: &Cyclotomic, order: u32) -> CMatrix {
    let zinv = zeta.conjugate();
    let rows = (0..n)
        .map(|r| {
            (0..n)
                .map(|col| match (r, col) {
                    (0, 1) => zinv.clone(),
                    (1, 0) => zeta.clone(),
                    (0, 0) | (1, 1) => c(0),
                    _ => c(i64::from(r == col)),
                })
                .collect()
        })
        .collect();
    CMatrix::from_rows_in(order, rows)
}

impl GroupSpec {
    pub fn parse(name: &str) -> Result<Self, GroupError> {
        Self::from_name(&name.parse()?)
    }

    pub fn from_name(name: &GroupName) -> Result<Self, GroupError> {
        let overflow = || unsupported(name, "group order overflows u64");
        match *name {
            GroupName::A(n) => {
                if n < 1 {
                    return Err(unsupported(name, "rank must be at least 1"));
                }
                let cartan = cartan_from_bonds(n, &chain(n));
                Ok(GroupSpec {
                    name: name.clone(),
                    rank: n,
                    field_order: 1,
                    generators: cartan_reflections(&cartan, 1),
                    expected_order: factorial(n + 1).ok_or_else(overflow)?,
                    expected_degrees: (2..=n as u64 + 1).collect(),
                })
            }
            GroupName::B(n) => {
                if n < 2 {
                    return Err(unsupported(name, "rank must be at least 2"));
                }
                let mut bonds = chain(n);
                bonds[n - 2].2 = c(-2);
                let cartan = cartan_from_bonds(n, &bonds);
                let order = factorial(n)
                    .and_then(|f| f.checked_mul(1u64.checked_shl(n as u32)?))
                    .ok_or_else(overflow)?;
                Ok(GroupSpec {
                    name: name.clone(),
                    rank: n,
                    field_order: 1,
                    generators: cartan_reflections(&cartan, 1),
                    expected_order: order,
                    expected_degrees: (1..=n as u64).map(|k| 2 * k).collect(),
                })
            }
            GroupName::D(n) => {
                if n < 4 {
                    return Err(unsupported(name, "rank must be at least 4"));
                }
                let mut bonds = chain(n - 1);
                bonds.push((n - 3, n - 1, c(-1), c(-1)));
                let cartan = cartan_from_bonds(n, &bonds);
                let order = factorial(n)
                    .and_then(|f| f.checked_mul(1u64.checked_shl(n as u32 - 1)?))
                    .ok_or_else(overflow)?;
                let mut degrees: Vec<u64> = (1..n as u64).map(|k| 2 * k).collect();
                degrees.push(n as u64);
                degrees.sort_unstable();
                Ok(GroupSpec {
                    name: name.clone(),
                    rank: n,
                    field_order: 1,
                    generators: cartan_reflections(&cartan, 1),
                    expected_order: order,
                    expected_degrees: degrees,
                })
            }
            GroupName::G2 => {
                let cartan = cartan_from_bonds(2, &[(0, 1, c(-1), c(-3))]);
                Ok(GroupSpec {
                    name: name.clone(),
                    rank: 2,
                    field_order: 1,
                    generators: cartan_reflections(&cartan, 1),
                    expected_order: 12,
                    expected_degrees: vec![2, 6],
                })
            }
            GroupName::F4 => {
                let mut bonds = chain(4);
                bonds[1].2 = c(-2);
                let cartan = cartan_from_bonds(4, &bonds);
                Ok(GroupSpec {
                    name: name.clone(),
                    rank: 4,
                    field_order: 1,
                    generators: cartan_reflections(&cartan, 1),
                    expected_order: 1152,
                    expected_degrees: vec![2, 6, 8, 12],
                })
            }
            GroupName::H3 => {
                // golden ratio 2cos(π/5) = 1 + ζ_5 + ζ_5^4
                let tau = c(1) + Cyclotomic::root_of_unity(5, 1) + Cyclotomic::root_of_unity(5, 4);
                let cartan = cartan_from_bonds(3, &[(0, 1, -&tau, -&tau), (1, 2, c(-1), c(-1))]);
                Ok(GroupSpec {
                    name: name.clone(),
                    rank: 3,
                    field_order: 5,
                    generators: cartan_reflections(&cartan, 5),
                    expected_order: 120,
                    expected_degrees: vec![2, 6, 10],
                })
            }
            GroupName::I2(m) => {
                if m < 3 {
                    return Err(unsupported(name, "I2(m) needs m >= 3"));
                }
                let order = 2 * m;
                // 2cos(π/m) = ζ_2m + ζ_2m^{-1}
                let a = Cyclotomic::root_of_unity(order, 1) + Cyclotomic::root_of_unity(order, -1);
                let cartan = cartan_from_bonds(2, &[(0, 1, -&a, -&a)]);
                let mut degrees = vec![2, u64::from(m)];
                degrees.sort_unstable();
                Ok(GroupSpec {
                    name: name.clone(),
                    rank: 2,
                    field_order: order,
                    generators: cartan_reflections(&cartan, order),
                    expected_order: 2 * u64::from(m),
                    expected_degrees: degrees,
                })
            }
            GroupName::Imprimitive { de, e, n } => imprimitive(name, de, e, n),
            GroupName::St4 => {
                // s = diag(1, ω²), t = Id + (ω² − 1)·u fᵀ with u = (1, 1/3), f = (2/3, 1).
                let w2 = Cyclotomic::root_of_unity(3, 2);
                let s = CMatrix::from_rows_in(3, vec![vec![c(1), c(0)], vec![c(0), w2.clone()]]);
                let k = &w2 - &c(1);
                let outer = [
                    [rat(2, 3), rat(1, 1)],
                    [rat(2, 9), rat(1, 3)],
                ];
                let rows = (0..2)
                    .map(|i| {
                        (0..2)
                            .map(|j| c(i64::from(i == j)) + k.scale(&outer[i][j]))
                            .collect()
                    })
                    .collect();
                let t = CMatrix::from_rows_in(3, rows);
                Ok(GroupSpec {
                    name: name.clone(),
                    rank: 2,
                    field_order: 3,
                    generators: vec![s, t],
                    expected_order: 24,
                    expected_degrees: vec![4, 6],
                })
            }
        }
    }
}

/// `G(m, p, n)` with `m = de`, `p = e`, realized by monomial matrices.
fn imprimitive(name: &GroupName, m: u32, p: u32, n: usize) -> Result<GroupSpec, GroupError> {
    if m == 0 || p == 0 || m % p != 0 {
        return Err(unsupported(name, "need e dividing de"));
    }
    if n == 0 {
        return Err(unsupported(name, "rank must be at least 1"));
    }
    if n == 1 && (p != 1 || m < 2) {
        return Err(unsupported(name, "rank-1 groups are G(d,1,1) with d >= 2"));
    }
    if m == 1 {
        return Err(unsupported(name, "G(1,1,n) acts reducibly on C^n; use A<n-1>"));
    }
    if n == 2 && m == 2 && p == 2 {
        return Err(unsupported(name, "G(2,2,2) is reducible"));
    }
    let order = u64::from(m)
        .checked_pow(n as u32)
        .and_then(|x| x.checked_mul(factorial(n)?))
        .map(|x| x / u64::from(p))
        .ok_or_else(|| unsupported(name, "group order overflows u64"))?;
    let zeta = Cyclotomic::root_of_unity(m, 1);
    let transpositions = (0..n - 1).map(|i| transposition(n, i, m));
    let generators: Vec<CMatrix> = if p == 1 {
        // the diagonal generator uses ζ^{-1} so that the Coxeter element has
        // eigenvalues exp(2πi(d_j − 1)/h)
        std::iter::once(diagonal_reflection(n, zeta.conjugate(), m))
            .chain(transpositions)
            .collect()
    } else if p == m {
        // reversed order for the same eigenvalue convention
        let mut gens: Vec<CMatrix> = transpositions.rev().collect();
        gens.push(twisted_transposition(n, &zeta, m));
        gens
    } else {
        // not well-generated: n + 1 generators
        let mut gens: Vec<CMatrix> = transpositions.rev().collect();
        gens.push(twisted_transposition(n, &zeta, m));
        gens.push(diagonal_reflection(
            n,
            Cyclotomic::root_of_unity(m, -(p as i64)),
            m,
        ));
        gens
    };
    let mut degrees: Vec<u64> = (1..n as u64).map(|k| k * u64::from(m)).collect();
    degrees.push(n as u64 * u64::from(m) / u64::from(p));
    degrees.sort_unstable();
    Ok(GroupSpec {
        name: name.clone(),
        rank: n,
        field_order: m,
        generators,
        expected_order: order,
        expected_degrees: degrees,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_names() {
        assert_eq!("A3".parse::<GroupName>().unwrap(), GroupName::A(3));
        assert_eq!("I2(7)".parse::<GroupName>().unwrap(), GroupName::I2(7));
        assert_eq!(
            "G(4, 2, 2)".parse::<GroupName>().unwrap(),
            GroupName::Imprimitive { de: 4, e: 2, n: 2 }
        );
        assert_eq!("ST4".parse::<GroupName>().unwrap(), GroupName::St4);
        for bad in ["", "X3", "A", "G(1,2)", "I2()", "E6", "Ax"] {
            assert!(bad.parse::<GroupName>().is_err(), "{bad}");
        }
        for name in ["A5", "B4", "D4", "G2", "F4", "H3", "I2(12)", "G(3,3,3)", "ST4"] {
            assert_eq!(name.parse::<GroupName>().unwrap().to_string(), name);
        }
    }

    #[test]
    fn rejects_degenerate_parameters() {
        for bad in ["A0", "B1", "D3", "I2(2)", "G(4,3,2)", "G(2,2,2)", "G(1,1,3)", "G(3,3,1)"] {
            assert!(GroupSpec::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn generators_are_reflections() {
        for name in ["A3", "B3", "D4", "G2", "F4", "H3", "I2(5)", "G(3,3,3)", "G(4,1,2)", "ST4"] {
            let spec = GroupSpec::parse(name).unwrap();
            assert_eq!(spec.generators.len(), spec.rank, "{name}");
            for g in &spec.generators {
                let id = CMatrix::identity(spec.rank, spec.field_order);
                assert_eq!((g - &id).rank(), 1, "{name}");
            }
            let prod: u64 = spec.expected_degrees.iter().product();
            assert_eq!(prod, spec.expected_order, "{name}");
        }
    }
}
