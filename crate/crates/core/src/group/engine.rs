//! Closure enumeration of a catalog group and its reflection/class structure.
//!
//! Elements are enumerated breadth-first from the identity under right
//! multiplication by the generators. Every element is then reachable by a word
//! in the generators, and products are evaluated by walking those words through
//! precomputed right-multiplication tables, so no matrix arithmetic happens
//! after the closure.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::catalog::GroupSpec;
use crate::arith::{CMatrix, Cyclotomic, UniPoly};
use crate::character::molien;
use crate::error::{Error, GroupError};

/// Summary invariants of a built group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupInfo {
    pub group: String,
    pub rank: usize,
    pub order: u64,
    /// `|R|`
    pub reflections: u64,
    /// `|R*|`
    pub hyperplanes: u64,
    pub degrees: Vec<u64>,
    pub coxeter_number: u64,
    pub coxeter_order: u64,
    /// `e_H ↦ number of hyperplanes`
    pub fixator_orders: BTreeMap<u32, usize>,
    pub classes: usize,
    pub generators: usize,
    /// Conductor of the field the generators are written over.
    pub field_order: u32,
}

/// Default closure bound, overridable through [`GroupConfig`].
pub const DEFAULT_MAX_ORDER: usize = 1_000_000;

#[derive(Clone, Copy, Debug)]
pub struct GroupConfig {
    pub max_order: usize,
}

impl Default for GroupConfig {
    fn default() -> Self {
        GroupConfig {
            max_order: DEFAULT_MAX_ORDER,
        }
    }
}

/// Borrowed view of one element.
#[derive(Clone, Copy, Debug)]
pub struct GroupElement<'a> {
    pub index: usize,
    pub matrix: &'a CMatrix,
}

/// A reflecting hyperplane together with its pointwise fixator.
#[derive(Clone, Debug)]
pub struct Hyperplane {
    /// Linear form vanishing on the hyperplane, scaled so its first nonzero
    /// coordinate is 1.
    pub normal: Vec<Cyclotomic>,
    /// `e_H`, the order of the cyclic fixator.
    pub fixator_order: u32,
    /// The `e_H − 1` reflections fixing the hyperplane, by element index.
    pub reflections: Vec<usize>,
    /// The reflection with nontrivial eigenvalue `exp(2πi/e_H)`.
    pub generator: usize,
}

#[derive(Clone, Debug)]
pub struct ConjugacyClasses {
    pub class_of: Vec<usize>,
    /// Members of each class, sorted; `members[k][0]` is the representative.
    pub members: Vec<Vec<usize>>,
    /// Class of the inverses of class `k`.
    pub inverse_class: Vec<usize>,
    /// `power_map[k][t]` is the class of `rep_k^t` for `0 <= t < exponent`.
    pub power_map: Vec<Vec<usize>>,
    /// Element order of each class.
    pub element_orders: Vec<u64>,
}

impl ConjugacyClasses {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn size(&self, k: usize) -> u64 {
        self.members[k].len() as u64
    }

    pub fn representative(&self, k: usize) -> usize {
        self.members[k][0]
    }

    pub fn sizes(&self) -> Vec<u64> {
        self.members.iter().map(|m| m.len() as u64).collect()
    }
}

#[derive(Clone, Debug)]
pub struct ReflectionGroup {
    spec: GroupSpec,
    elements: Vec<CMatrix>,
    /// BFS tree: element `i` equals `parent[i] · generator[gen[i]]`.
    parent: Vec<usize>,
    gen: Vec<usize>,
    right_gen: Vec<Vec<usize>>,
    right_gen_inv: Vec<Vec<usize>>,
    inverses: Vec<usize>,
    reflections: Vec<usize>,
    reflection_hyperplane: HashMap<usize, usize>,
    hyperplanes: Vec<Hyperplane>,
    classes: ConjugacyClasses,
    exponent: u64,
    degrees: Vec<u64>,
    coxeter: usize,
}

impl ReflectionGroup {
    pub fn build(spec: GroupSpec) -> Result<Self, Error> {
        Self::build_with(spec, GroupConfig::default())
    }

    pub fn build_with(spec: GroupSpec, config: GroupConfig) -> Result<Self, Error> {
        let name = spec.name.to_string();
        if spec.expected_order > config.max_order as u64 {
            return Err(GroupError::TooLarge {
                limit: config.max_order,
            }
            .into());
        }
        let n = spec.rank;
        let ngens = spec.generators.len();
        let mut elements = vec![CMatrix::identity(n, spec.field_order)];
        let mut parent = vec![0usize];
        let mut gen = vec![usize::MAX];
        let mut right_gen = vec![Vec::new(); ngens];
        let mut lookup: HashMap<u64, Vec<usize>> = HashMap::new();
        lookup.insert(elements[0].key_hash(), vec![0]);

        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for (j, g) in spec.generators.iter().enumerate() {
                let prod = &elements[i] * g;
                let key = prod.key_hash();
                let bucket = lookup.entry(key).or_default();
                let found = bucket.iter().copied().find(|&k| elements[k] == prod);
                let idx = match found {
                    Some(k) => k,
                    None => {
                        let k = elements.len();
                        if k >= config.max_order {
                            return Err(GroupError::TooLarge {
                                limit: config.max_order,
                            }
                            .into());
                        }
                        bucket.push(k);
                        elements.push(prod);
                        parent.push(i);
                        gen.push(j);
                        queue.push_back(k);
                        k
                    }
                };
                let table = &mut right_gen[j];
                if table.len() <= i {
                    table.resize(i + 1, usize::MAX);
                }
                table[i] = idx;
            }
        }
        if elements.len() as u64 != spec.expected_order {
            return Err(GroupError::CatalogInconsistency {
                name,
                detail: format!(
                    "closure has {} elements, expected {}",
                    elements.len(),
                    spec.expected_order
                ),
            }
            .into());
        }
        let order = elements.len();
        let right_gen_inv = right_gen
            .iter()
            .map(|t| {
                let mut inv = vec![0usize; order];
                for (i, &j) in t.iter().enumerate() {
                    inv[j] = i;
                }
                inv
            })
            .collect();

        let mut group = ReflectionGroup {
            spec,
            elements,
            parent,
            gen,
            right_gen,
            right_gen_inv,
            inverses: Vec::new(),
            reflections: Vec::new(),
            reflection_hyperplane: HashMap::new(),
            hyperplanes: Vec::new(),
            classes: ConjugacyClasses {
                class_of: Vec::new(),
                members: Vec::new(),
                inverse_class: Vec::new(),
                power_map: Vec::new(),
                element_orders: Vec::new(),
            },
            exponent: 1,
            degrees: Vec::new(),
            coxeter: 0,
        };
        group.inverses = (0..order).map(|i| group.compute_inverse(i)).collect();
        group.reflections = group.find_reflections();
        group.classify_hyperplanes()?;
        group.compute_classes();

        let degrees = molien::molien_degrees(&group)?;
        if degrees != group.spec.expected_degrees {
            return Err(GroupError::CatalogInconsistency {
                name,
                detail: format!(
                    "degrees {degrees:?} differ from catalog {:?}",
                    group.spec.expected_degrees
                ),
            }
            .into());
        }
        group.degrees = degrees;
        group.coxeter = group.coxeter_element()?;
        Ok(group)
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn name(&self) -> String {
        self.spec.name.to_string()
    }

    /// Rank `n`, the dimension of the reflection representation.
    pub fn rank(&self) -> usize {
        self.spec.rank
    }

    /// `|W|`
    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn matrix(&self, i: usize) -> &CMatrix {
        &self.elements[i]
    }

    pub fn element(&self, i: usize) -> GroupElement<'_> {
        GroupElement {
            index: i,
            matrix: &self.elements[i],
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement<'_>> {
        (0..self.elements.len()).map(|i| self.element(i))
    }

    /// Element index of the `j`-th generator.
    pub fn generator(&self, j: usize) -> usize {
        self.right_gen[j][0]
    }

    pub fn num_generators(&self) -> usize {
        self.right_gen.len()
    }

    /// Generator indices `g_1 … g_k` with `element = g_1 ⋯ g_k`.
    pub fn word(&self, mut i: usize) -> Vec<usize> {
        let mut w = Vec::new();
        while i != 0 {
            w.push(self.gen[i]);
            i = self.parent[i];
        }
        w.reverse();
        w
    }

    /// Index of `a · b`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.word(b)
            .into_iter()
            .fold(a, |acc, j| self.right_gen[j][acc])
    }

    /// Right multiplication by `b` applied to every element, as an index map.
    pub fn right_multiplication(&self, b: usize) -> Vec<usize> {
        let w = self.word(b);
        (0..self.elements.len())
            .map(|a| w.iter().fold(a, |acc, &j| self.right_gen[j][acc]))
            .collect()
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    fn compute_inverse(&self, a: usize) -> usize {
        self.word(a)
            .into_iter()
            .rev()
            .fold(0, |acc, j| self.right_gen_inv[j][acc])
    }

    fn find_reflections(&self) -> Vec<usize> {
        let id = CMatrix::identity(self.rank(), self.spec.field_order);
        (1..self.elements.len())
            .filter(|&i| (&self.elements[i] - &id).rank() == 1)
            .collect()
    }

    /// The set `R` of reflections, by element index (ascending).
    pub fn reflections(&self) -> &[usize] {
        &self.reflections
    }

    pub fn is_reflection(&self, i: usize) -> bool {
        self.reflection_hyperplane.contains_key(&i)
    }

    /// The set `R*` of reflecting hyperplanes.
    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    /// Index into [`hyperplanes`](Self::hyperplanes) of the hyperplane fixed by reflection `r`.
    pub fn hyperplane_of(&self, r: usize) -> Option<usize> {
        self.reflection_hyperplane.get(&r).copied()
    }

    /// The common value of `e_H`, if all hyperplanes share one.
    pub fn common_fixator_order(&self) -> Option<u32> {
        let first = self.hyperplanes.first()?.fixator_order;
        self.hyperplanes
            .iter()
            .all(|h| h.fixator_order == first)
            .then_some(first)
    }

    fn classify_hyperplanes(&mut self) -> Result<(), GroupError> {
        let id = CMatrix::identity(self.rank(), self.spec.field_order);
        let mut index: HashMap<u64, Vec<usize>> = HashMap::new();
        let mut normals: Vec<Vec<Cyclotomic>> = Vec::new();
        let mut members: Vec<Vec<usize>> = Vec::new();
        for &r in &self.reflections {
            let diff = &self.elements[r] - &id;
            let row = (0..self.rank())
                .map(|i| diff.row(i))
                .find(|row| row.iter().any(|x| !x.is_zero()))
                .expect("reflection has a nonzero row");
            let lead = row.iter().find(|x| !x.is_zero()).unwrap().inverse().unwrap();
            let normal: Vec<Cyclotomic> = row
                .iter()
                .map(|x| (x * &lead).embed(self.spec.field_order))
                .collect();
            let key = {
                use std::hash::{Hash, Hasher};
                let mut h = std::collections::hash_map::DefaultHasher::new();
                for x in &normal {
                    x.coeffs().hash(&mut h);
                }
                h.finish()
            };
            let bucket = index.entry(key).or_default();
            let h = match bucket.iter().copied().find(|&h| normals[h] == normal) {
                Some(h) => h,
                None => {
                    bucket.push(normals.len());
                    normals.push(normal);
                    members.push(Vec::new());
                    normals.len() - 1
                }
            };
            members[h].push(r);
            self.reflection_hyperplane.insert(r, h);
        }
        self.hyperplanes = normals
            .into_iter()
            .zip(members)
            .map(|(normal, refl)| {
                let e = refl.len() as u32 + 1;
                let zeta = Cyclotomic::root_of_unity(e, 1);
                let generator = refl
                    .iter()
                    .copied()
                    .find(|&r| self.elements[r].det() == zeta)
                    .ok_or_else(|| {
                        GroupError::NotAReflectionGroup(format!(
                            "fixator of a hyperplane with {} reflections is not cyclic",
                            refl.len()
                        ))
                    })?;
                Ok(Hyperplane {
                    normal,
                    fixator_order: e,
                    reflections: refl,
                    generator,
                })
            })
            .collect::<Result<_, GroupError>>()?;
        Ok(())
    }

    pub fn classes(&self) -> &ConjugacyClasses {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.classes.class_of[i]
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    fn compute_classes(&mut self) {
        let order = self.elements.len();
        let gens: Vec<usize> = (0..self.num_generators()).map(|j| self.generator(j)).collect();
        let gen_inv: Vec<usize> = gens.iter().map(|&g| self.inverse(g)).collect();
        let mut class_of = vec![usize::MAX; order];
        let mut members: Vec<Vec<usize>> = Vec::new();
        for start in 0..order {
            if class_of[start] != usize::MAX {
                continue;
            }
            let k = members.len();
            let mut orbit = vec![start];
            class_of[start] = k;
            let mut head = 0;
            while head < orbit.len() {
                let x = orbit[head];
                head += 1;
                for (j, &s_inv) in gen_inv.iter().enumerate() {
                    // s⁻¹ · x · s
                    let y = self.right_gen[j][self.mul(s_inv, x)];
                    if class_of[y] == usize::MAX {
                        class_of[y] = k;
                        orbit.push(y);
                    }
                }
            }
            orbit.sort_unstable();
            members.push(orbit);
        }
        let inverse_class = members
            .iter()
            .map(|m| class_of[self.inverse(m[0])])
            .collect();

        let mut element_orders = Vec::with_capacity(members.len());
        let mut powers: Vec<Vec<usize>> = Vec::with_capacity(members.len());
        for m in &members {
            let rep = m[0];
            let mut seq = vec![0usize];
            let mut x = rep;
            while x != 0 {
                seq.push(x);
                x = self.mul(x, rep);
            }
            element_orders.push(seq.len() as u64);
            powers.push(seq);
        }
        self.exponent = element_orders.iter().fold(1u64, |a, &o| a.lcm(&o));
        let exponent = self.exponent as usize;
        let power_map = powers
            .iter()
            .map(|seq| (0..exponent).map(|t| class_of[seq[t % seq.len()]]).collect())
            .collect();
        self.classes = ConjugacyClasses {
            class_of,
            members,
            inverse_class,
            power_map,
            element_orders,
        };
    }

    /// Invariant degrees `d_1 <= … <= d_n`.
    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    /// Coxeter number `h = d_n`.
    pub fn coxeter_number(&self) -> u64 {
        *self.degrees.last().expect("degrees computed")
    }

    /// Index of the Coxeter element `c`.
    pub fn coxeter(&self) -> usize {
        self.coxeter
    }

    pub fn info(&self) -> GroupInfo {
        let mut fixator_orders = BTreeMap::new();
        for h in &self.hyperplanes {
            *fixator_orders.entry(h.fixator_order).or_insert(0) += 1;
        }
        GroupInfo {
            group: self.name(),
            rank: self.rank(),
            order: self.order(),
            reflections: self.reflections.len() as u64,
            hyperplanes: self.hyperplanes.len() as u64,
            degrees: self.degrees.clone(),
            coxeter_number: self.coxeter_number(),
            coxeter_order: self.element_order(self.coxeter),
            fixator_orders,
            classes: self.num_classes(),
            generators: self.num_generators(),
            field_order: self.spec.field_order,
        }
    }

    pub fn element_order(&self, i: usize) -> u64 {
        self.classes.element_orders[self.class_of(i)]
    }

    /// Product of the distinguished generators in catalog order, checked to
    /// have order `h` and eigenvalues `exp(2πi(d_j − 1)/h)`.
    fn coxeter_element(&self) -> Result<usize, GroupError> {
        let c = (0..self.num_generators()).fold(0, |acc, j| self.right_gen[j][acc]);
        let h = self.coxeter_number();
        let unsuitable = |detail: String| GroupError::UnsuitableGeneratorOrder {
            name: self.name(),
            detail,
        };
        let order = self.element_order(c);
        if order != h {
            return Err(unsuitable(format!("product of generators has order {order}, h = {h}")));
        }
        let expected = UniPoly::from_roots(
            &self
                .degrees
                .iter()
                .map(|&d| Cyclotomic::root_of_unity(h as u32, d as i64 - 1))
                .collect::<Vec<_>>(),
        );
        let actual = self.elements[c].charpoly();
        if actual != expected {
            return Err(unsuitable(format!(
                "characteristic polynomial {actual} differs from {expected}"
            )));
        }
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(name: &str) -> ReflectionGroup {
        ReflectionGroup::build(GroupSpec::parse(name).unwrap()).unwrap()
    }

    #[test]
    fn a1_and_a2() {
        let a1 = build("A1");
        assert_eq!(a1.order(), 2);
        assert_eq!(a1.classes().sizes(), vec![1, 1]);
        let a2 = build("A2");
        assert_eq!(a2.order(), 6);
        assert_eq!(a2.reflections().len(), 3);
        assert_eq!(a2.hyperplanes().len(), 3);
        assert!(a2.hyperplanes().iter().all(|h| h.fixator_order == 2));
        let mut sizes = a2.classes().sizes();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert_eq!(a2.element_order(a2.coxeter()), 3);
    }

    #[test]
    fn b2_structure() {
        let b2 = build("B2");
        assert_eq!(b2.order(), 8);
        assert_eq!(b2.reflections().len(), 4);
        assert_eq!(b2.num_classes(), 5);
        assert_eq!(b2.element_order(b2.coxeter()), 4);
    }

    #[test]
    fn st4_asymmetry() {
        let g4 = build("ST4");
        assert_eq!(g4.order(), 24);
        assert_eq!(g4.reflections().len(), 8);
        assert_eq!(g4.hyperplanes().len(), 4);
        assert_eq!(g4.common_fixator_order(), Some(3));
        assert_eq!(g4.element_order(g4.coxeter()), 6);
        assert_eq!(g4.degrees(), &[4, 6]);
    }

    #[test]
    fn imprimitive_orders() {
        let g = build("G(3,3,3)");
        assert_eq!(g.order(), 3u64.pow(3) * 6 / 3);
        let g = build("G(4,1,2)");
        let mut es: Vec<u32> = g.hyperplanes().iter().map(|h| h.fixator_order).collect();
        es.sort_unstable();
        assert_eq!(es, vec![2, 2, 2, 2, 4, 4]);
        assert_eq!(g.common_fixator_order(), None);
    }

    #[test]
    fn multiplication_matches_matrices() {
        let g = build("H3");
        for (a, b) in [(3, 17), (40, 99), (119, 5), (0, 64)] {
            let prod = g.matrix(a) * g.matrix(b);
            assert_eq!(g.matrix(g.mul(a, b)), &prod);
        }
        for i in 0..g.len() {
            assert_eq!(g.mul(i, g.inverse(i)), 0);
        }
    }

    #[test]
    fn size_guard() {
        let spec = GroupSpec::parse("F4").unwrap();
        let err = ReflectionGroup::build_with(spec, GroupConfig { max_order: 100 }).unwrap_err();
        assert!(matches!(err, Error::Group(GroupError::TooLarge { limit: 100 })));
    }

    #[test]
    fn deterministic_indexing() {
        let a = build("B3");
        let b = build("B3");
        for i in 0..a.len() {
            assert_eq!(a.matrix(i), b.matrix(i));
        }
        assert_eq!(a.coxeter(), b.coxeter());
    }
}
