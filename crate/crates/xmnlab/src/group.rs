//! Concrete finite groups: the full element list plus index-based
//! multiplication and inverse tables.
//!
//! Elements are sorted lexicographically by image array, which puts the
//! identity at index 0 and makes every construction deterministic regardless
//! of generator order.

use crate::error::{Error, Result};
use crate::perm::{compose_images, Permutation};
use serde::Deserialize;
use std::collections::HashMap;

/// Default ceiling on the number of elements a construction may enumerate.
pub const DEFAULT_ORDER_CAP: usize = 1000;

/// A finite permutation group with precomputed Cayley and inverse tables.
///
/// ```
/// use xmnlab::{Group, Permutation};
///
/// let gens = vec![
///     Permutation::from_cycles("(0 1)", 3).unwrap(),
///     Permutation::from_cycles("(0 1 2)", 3).unwrap(),
/// ];
/// let g = Group::from_generators(3, &gens, "S3", 1000).unwrap();
/// assert_eq!(g.order(), 6);
/// assert_eq!(g.mul(0, 3), 3); // identity law
/// ```
#[derive(Debug, Clone)]
pub struct Group {
    name: String,
    degree: usize,
    elements: Vec<Permutation>,
    mult: Vec<u32>,
    inv: Vec<u32>,
}

impl Group {
    /// Enumerates the closure of `gens` under composition and builds the
    /// tables. The identity is always included, so empty `gens` yield the
    /// trivial group on `degree` points.
    pub fn from_generators(
        degree: usize,
        gens: &[Permutation],
        name: impl Into<String>,
        order_cap: usize,
    ) -> Result<Group> {
        if degree == 0 {
            return Err(Error::InvalidInput("degree must be at least 1".into()));
        }
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        let identity = Permutation::identity(degree);
        let mut elements = vec![identity];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        index.insert(elements[0].images().to_vec(), 0);
        let mut next = 0;
        while next < elements.len() {
            for g in gens {
                let prod = compose_images(elements[next].images(), g.images());
                if !index.contains_key(&prod) {
                    if elements.len() >= order_cap {
                        return Err(Error::OrderCapExceeded { cap: order_cap });
                    }
                    index.insert(prod.clone(), elements.len());
                    elements.push(Permutation::from_images(prod)?);
                }
            }
            next += 1;
        }
        Group::from_elements(name, degree, elements, order_cap)
    }

    /// Builds a group from a complete element list, verifying that the set is
    /// closed under composition and inversion. Used by direct products and by
    /// closure-idempotence checks.
    pub fn from_elements(
        name: impl Into<String>,
        degree: usize,
        mut elements: Vec<Permutation>,
        order_cap: usize,
    ) -> Result<Group> {
        if elements.len() > order_cap {
            return Err(Error::OrderCapExceeded { cap: order_cap });
        }
        for e in &elements {
            if e.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: e.degree(),
                });
            }
        }
        elements.sort_unstable();
        elements.dedup();
        let order = elements.len();
        if order == 0 || !elements[0].is_identity() {
            return Err(Error::InvalidInput(
                "element set does not contain the identity".into(),
            ));
        }
        let index: HashMap<&[usize], usize> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.images(), i))
            .collect();
        let mut mult = vec![0u32; order * order];
        for i in 0..order {
            for j in 0..order {
                let prod = compose_images(elements[i].images(), elements[j].images());
                let k = *index.get(prod.as_slice()).ok_or_else(|| {
                    Error::InvalidInput(format!(
                        "element set is not closed: {} * {} escapes it",
                        elements[i], elements[j]
                    ))
                })?;
                mult[i * order + j] = k as u32;
            }
        }
        let mut inv = vec![0u32; order];
        for i in 0..order {
            let ip = elements[i].inverse();
            let k = *index.get(ip.images()).ok_or_else(|| {
                Error::InvalidInput(format!(
                    "element set is not closed under inversion at {}",
                    elements[i]
                ))
            })?;
            inv[i] = k as u32;
        }
        Ok(Group {
            name: name.into(),
            degree,
            elements,
            mult,
            inv,
        })
    }

    /// The trivial group on `degree` points.
    pub fn trivial(degree: usize, name: impl Into<String>) -> Group {
        Group::from_generators(degree, &[], name, 1).expect("trivial group always fits")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.elements.binary_search(p).ok()
    }

    /// Product of element indices: `elements[i] ∘ elements[j]` (`j` acts first).
    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.mult[i * self.elements.len() + j] as usize
    }

    #[inline]
    pub fn inverse(&self, i: usize) -> usize {
        self.inv[i] as usize
    }

    /// Order of the element at index `i`.
    pub fn element_order(&self, i: usize) -> usize {
        self.elements[i].order()
    }

    /// Conjugate `g⁻¹ x g` by index.
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inverse(g), x), g)
    }

    /// Commutator `x⁻¹ y⁻¹ x y` by index.
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        self.mul(
            self.mul(self.inverse(x), self.inverse(y)),
            self.mul(x, y),
        )
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Group {
        self.name = name.into();
        self
    }
}

/// JSON description of a group: a name, a degree and a generator list. Each
/// generator is either an image array or a cycle-notation string.
///
/// ```json
/// { "name": "S3", "degree": 3, "generators": [[1, 0, 2], "(0 1 2)"] }
/// ```
#[derive(Debug, Deserialize)]
pub struct GroupFile {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<GeneratorSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum GeneratorSpec {
    Images(Vec<usize>),
    Cycles(String),
}

impl GroupFile {
    pub fn parse(text: &str) -> Result<GroupFile> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn build(&self, order_cap: usize) -> Result<Group> {
        let gens = self
            .generators
            .iter()
            .map(|spec| match spec {
                GeneratorSpec::Images(images) => Permutation::from_images(images.clone()),
                GeneratorSpec::Cycles(s) => Permutation::from_cycles(s, self.degree),
            })
            .collect::<Result<Vec<_>>>()?;
        Group::from_generators(self.degree, &gens, self.name.clone(), order_cap)
    }
}

/// Parses and builds a group from JSON text in one step.
pub fn group_from_json(text: &str, order_cap: usize) -> Result<Group> {
    GroupFile::parse(text)?.build(order_cap)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(s: &str, d: usize) -> Permutation {
        Permutation::from_cycles(s, d).unwrap()
    }

    #[test]
    fn trivial_group() {
        let g = Group::from_generators(1, &[], "triv", 10).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.mul(0, 0), 0);
        assert_eq!(g.inverse(0), 0);
    }

    #[test]
    fn symmetric_on_three() {
        let g = Group::from_generators(3, &[cyc("(0 1)", 3), cyc("(0 1 2)", 3)], "S3", 100).unwrap();
        assert_eq!(g.order(), 6);
    }

    #[test]
    fn alternating_on_five() {
        let g = Group::from_generators(
            5,
            &[cyc("(0 1 2 3 4)", 5), cyc("(0 1 2)", 5)],
            "A5",
            100,
        )
        .unwrap();
        assert_eq!(g.order(), 60); // 5!/2
    }

    #[test]
    fn identity_law_and_inverses() {
        let g = Group::from_generators(3, &[cyc("(0 1)", 3), cyc("(0 1 2)", 3)], "S3", 100).unwrap();
        for i in 0..g.order() {
            assert_eq!(g.mul(0, i), i);
            assert_eq!(g.mul(i, 0), i);
            assert_eq!(g.mul(i, g.inverse(i)), 0);
            assert_eq!(g.mul(g.inverse(i), i), 0);
        }
    }

    #[test]
    fn mult_table_is_latin_square() {
        let g = Group::from_generators(4, &[cyc("(0 1)", 4), cyc("(0 1 2 3)", 4)], "S4", 100).unwrap();
        let n = g.order();
        for i in 0..n {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for j in 0..n {
                assert!(!row[g.mul(i, j)], "row {i} repeats");
                row[g.mul(i, j)] = true;
                assert!(!col[g.mul(j, i)], "column {i} repeats");
                col[g.mul(j, i)] = true;
            }
        }
    }

    #[test]
    fn associativity_spot_check() {
        let g = Group::from_generators(4, &[cyc("(0 1)", 4), cyc("(0 1 2 3)", 4)], "S4", 100).unwrap();
        let n = g.order();
        // deterministic pseudo-random triples
        let mut state = 0x9e3779b97f4a7c15u64;
        for _ in 0..200 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let i = (state >> 33) as usize % n;
            let j = (state >> 17) as usize % n;
            let k = state as usize % n;
            assert_eq!(g.mul(g.mul(i, j), k), g.mul(i, g.mul(j, k)));
        }
    }

    #[test]
    fn element_order_divides_group_order() {
        let g = Group::from_generators(4, &[cyc("(0 1)", 4), cyc("(0 1 2 3)", 4)], "S4", 100).unwrap();
        for i in 0..g.order() {
            assert_eq!(g.order() % g.element_order(i), 0);
        }
    }

    #[test]
    fn canonical_order_is_independent_of_generator_order() {
        let a = cyc("(0 1)", 3);
        let b = cyc("(0 1 2)", 3);
        let g1 = Group::from_generators(3, &[a.clone(), b.clone()], "S3", 100).unwrap();
        let g2 = Group::from_generators(3, &[b, a], "S3", 100).unwrap();
        assert_eq!(g1.elements(), g2.elements());
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(g1.mul(i, j), g2.mul(i, j));
            }
        }
    }

    #[test]
    fn closure_idempotence() {
        let g = Group::from_generators(3, &[cyc("(0 1)", 3), cyc("(0 1 2)", 3)], "S3", 100).unwrap();
        let rebuilt = Group::from_elements("S3", 3, g.elements().to_vec(), 100).unwrap();
        assert_eq!(g.elements(), rebuilt.elements());
        for i in 0..g.order() {
            for j in 0..g.order() {
                assert_eq!(g.mul(i, j), rebuilt.mul(i, j));
            }
            assert_eq!(g.inverse(i), rebuilt.inverse(i));
        }
    }

    #[test]
    fn order_cap_is_reported() {
        let err = Group::from_generators(5, &[cyc("(0 1 2 3 4)", 5), cyc("(0 1 2)", 5)], "A5", 10)
            .unwrap_err();
        match err {
            Error::OrderCapExceeded { cap } => assert_eq!(cap, 10),
            other => panic!("unexpected error {other}"),
        }
        assert!(err.to_string().contains("10"));
    }

    #[test]
    fn incomplete_element_set_rejected() {
        let p = cyc("(0 1)", 3);
        let q = cyc("(0 1 2)", 3);
        let err = Group::from_elements("bad", 3, vec![Permutation::identity(3), p, q], 100);
        assert!(err.is_err());
    }

    #[test]
    fn json_forms() {
        let text = r#"{ "name": "S3", "degree": 3, "generators": [[1, 0, 2], "(0 1 2)"] }"#;
        let g = group_from_json(text, 100).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.name(), "S3");
        assert!(group_from_json(r#"{ "name": "x", "degree": 3, "generators": ["(0 9)"] }"#, 100).is_err());
    }
}
