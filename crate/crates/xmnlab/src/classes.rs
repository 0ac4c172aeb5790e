//! Group classes with their probability thresholds, and the subgroup
//! machinery needed to decide membership of two-generated subgroups.
//!
//! Each registered class carries an exact rational γ with the property that
//! a finite group whose pair probability exceeds γ must lie in the class.
//! The verification bound base is 2/(1−γ).

use crate::error::{Error, Result};
use crate::group::Group;
use fixedbitset::FixedBitSet;
use num::BigRational;
use std::fmt;
use std::str::FromStr;

/// Identifier of a registered group class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassId {
    Nilpotent,
    Soluble,
    OddOrder,
    FittedUniversal,
    Abelian,
}

impl ClassId {
    pub const ALL: [ClassId; 5] = [
        ClassId::Nilpotent,
        ClassId::Soluble,
        ClassId::OddOrder,
        ClassId::FittedUniversal,
        ClassId::Abelian,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClassId::Nilpotent => "nilpotent",
            ClassId::Soluble => "soluble",
            ClassId::OddOrder => "odd_order",
            ClassId::FittedUniversal => "fitted_universal",
            ClassId::Abelian => "abelian",
        }
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClassId {
    type Err = Error;

    fn from_str(s: &str) -> Result<ClassId> {
        match s {
            "nilpotent" => Ok(ClassId::Nilpotent),
            "soluble" => Ok(ClassId::Soluble),
            "odd_order" => Ok(ClassId::OddOrder),
            "fitted_universal" => Ok(ClassId::FittedUniversal),
            "abelian" => Ok(ClassId::Abelian),
            other => Err(Error::UnknownClass(other.to_string())),
        }
    }
}

/// A registered class: identifier, exact threshold γ, closure flags and the
/// classical source of the threshold. The closure flags are informational;
/// only `extension_closed` drives behavior (the universal-constant bound is
/// checked for extension-closed classes only).
#[derive(Debug, Clone)]
pub struct ClassSpec {
    pub id: ClassId,
    pub gamma: BigRational,
    pub subgroup_closed: bool,
    pub quotient_closed: bool,
    pub extension_closed: bool,
    pub provenance: &'static str,
}

fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

/// Builds the `ClassSpec` for one class id.
pub fn class_spec(id: ClassId) -> ClassSpec {
    match id {
        ClassId::Nilpotent => ClassSpec {
            id,
            gamma: ratio(1, 2),
            subgroup_closed: true,
            quotient_closed: true,
            extension_closed: false,
            provenance: "Guralnick-Wilson: pair probability above 1/2 forces nilpotency",
        },
        ClassId::Soluble => ClassSpec {
            id,
            gamma: ratio(11, 30),
            subgroup_closed: true,
            quotient_closed: true,
            extension_closed: true,
            provenance: "Guralnick-Wilson: pair probability above 11/30 forces solubility",
        },
        ClassId::OddOrder => ClassSpec {
            id,
            gamma: ratio(1, 4),
            subgroup_closed: true,
            quotient_closed: true,
            extension_closed: true,
            provenance: "Guralnick-Wilson: pair probability above 1/4 forces odd order",
        },
        ClassId::FittedUniversal => ClassSpec {
            id,
            gamma: ratio(37, 90),
            subgroup_closed: true,
            quotient_closed: true,
            extension_closed: true,
            provenance: "universal constant kappa = max(1 - 53/90, 5/18) valid for every \
                         subgroup-, quotient- and extension-closed class; membership \
                         evaluated via the soluble predicate, one admissible such class",
        },
        ClassId::Abelian => ClassSpec {
            id,
            gamma: ratio(5, 8),
            subgroup_closed: true,
            quotient_closed: true,
            extension_closed: false,
            provenance: "Gustafson: commuting probability above 5/8 forces commutativity",
        },
    }
}

/// All registered classes, in registry order.
pub fn registry() -> Vec<ClassSpec> {
    ClassId::ALL.iter().map(|&id| class_spec(id)).collect()
}

impl ClassSpec {
    /// The bound base 2/(1−γ), exact.
    pub fn bound_base(&self) -> BigRational {
        ratio(2, 1) / (ratio(1, 1) - self.gamma.clone())
    }
}

/// A subgroup of a host group, stored as element indices. `members` is
/// ascending and always contains index 0 (the identity).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupSet {
    bits: FixedBitSet,
    members: Vec<usize>,
}

impl SubgroupSet {
    fn from_bits(bits: FixedBitSet) -> SubgroupSet {
        let members = bits.ones().collect();
        SubgroupSet { bits, members }
    }

    /// The improper subgroup: all of `g`.
    pub fn full(g: &Group) -> SubgroupSet {
        let mut bits = FixedBitSet::with_capacity(g.order());
        bits.insert_range(..);
        SubgroupSet::from_bits(bits)
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.bits.contains(index)
    }
}

/// Smallest subgroup of `g` containing `seeds`: the orbit of the identity
/// under right multiplication by the seeds. Inverses come for free in a
/// finite group (every inverse is a positive power).
pub fn subgroup_closure(g: &Group, seeds: &[usize]) -> SubgroupSet {
    let mut bits = FixedBitSet::with_capacity(g.order());
    bits.insert(0);
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let h = queue[head];
        head += 1;
        for &s in seeds {
            let t = g.mul(h, s);
            if !bits.contains(t) {
                bits.insert(t);
                queue.push(t);
            }
        }
    }
    SubgroupSet::from_bits(bits)
}

/// Closure of all commutators a⁻¹b⁻¹ab with a ∈ `left`, b ∈ `right`.
/// Both argument sets must be subgroups of `g`.
fn commutator_subgroup(g: &Group, left: &SubgroupSet, right: &SubgroupSet) -> SubgroupSet {
    let mut seen = FixedBitSet::with_capacity(g.order());
    let mut seeds = Vec::new();
    for &a in left.members() {
        for &b in right.members() {
            let c = g.commutator(a, b);
            if !seen.contains(c) {
                seen.insert(c);
                seeds.push(c);
            }
        }
    }
    subgroup_closure(g, &seeds)
}

/// Derived subgroup: closure of all commutators of pairs from `h`.
pub fn derived_subgroup(g: &Group, h: &SubgroupSet) -> SubgroupSet {
    commutator_subgroup(g, h, h)
}

/// Derived series termination at the trivial subgroup.
pub fn is_soluble(g: &Group, h: &SubgroupSet) -> bool {
    let mut cur = h.clone();
    loop {
        let next = derived_subgroup(g, &cur);
        if next.len() == cur.len() {
            return cur.len() == 1;
        }
        cur = next;
    }
}

/// Lower central series termination at the trivial subgroup.
pub fn is_nilpotent(g: &Group, h: &SubgroupSet) -> bool {
    let mut cur = h.clone();
    loop {
        let next = commutator_subgroup(g, &cur, h);
        if next.len() == cur.len() {
            return cur.len() == 1;
        }
        cur = next;
    }
}

pub fn is_abelian(g: &Group, h: &SubgroupSet) -> bool {
    let m = h.members();
    for (i, &a) in m.iter().enumerate() {
        for &b in &m[i + 1..] {
            if g.mul(a, b) != g.mul(b, a) {
                return false;
            }
        }
    }
    true
}

pub fn is_odd_order(h: &SubgroupSet) -> bool {
    h.len() % 2 == 1
}

/// Membership of subgroup `h` in the class. The universal fitted class is
/// evaluated via the soluble predicate (see the registry provenance).
pub fn in_class(g: &Group, h: &SubgroupSet, id: ClassId) -> bool {
    match id {
        ClassId::Abelian => is_abelian(g, h),
        ClassId::Nilpotent => is_nilpotent(g, h),
        ClassId::Soluble | ClassId::FittedUniversal => is_soluble(g, h),
        ClassId::OddOrder => is_odd_order(h),
    }
}

/// Whether ⟨x, y⟩ lies in the class.
pub fn pair_in_class(g: &Group, x: usize, y: usize, id: ClassId) -> bool {
    in_class(g, &subgroup_closure(g, &[x, y]), id)
}

/// Fraction of ordered pairs (x, y) in G x G with ⟨x, y⟩ = G, exact.
/// ⟨x, y⟩ = ⟨y, x⟩, so only unordered pairs are closed.
pub fn generation_probability(g: &Group) -> BigRational {
    let t = g.order();
    let mut count: u64 = 0;
    for x in 0..t {
        for y in x..t {
            if subgroup_closure(g, &[x, y]).len() == t {
                count += if x == y { 1 } else { 2 };
            }
        }
    }
    let t = t as u64;
    BigRational::new(count.into(), (t * t).into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn build(degree: usize, cycles: &[&str], name: &str) -> Group {
        let gens: Vec<_> = cycles
            .iter()
            .map(|c| Permutation::from_cycles(c, degree).unwrap())
            .collect();
        Group::from_generators(degree, &gens, name, 1000).unwrap()
    }

    fn s3() -> Group {
        build(3, &["(0 1)", "(0 1 2)"], "S3")
    }

    fn s4() -> Group {
        build(4, &["(0 1)", "(0 1 2 3)"], "S4")
    }

    fn a5() -> Group {
        build(5, &["(0 1 2)", "(0 1 2 3 4)"], "A5")
    }

    #[test]
    fn registry_thresholds_and_bases() {
        let bases: Vec<(ClassId, (i64, i64), (i64, i64))> = vec![
            (ClassId::Nilpotent, (1, 2), (4, 1)),
            (ClassId::Soluble, (11, 30), (60, 19)),
            (ClassId::OddOrder, (1, 4), (8, 3)),
            (ClassId::FittedUniversal, (37, 90), (180, 53)),
            (ClassId::Abelian, (5, 8), (16, 3)),
        ];
        for (id, (gp, gq), (bp, bq)) in bases {
            let spec = class_spec(id);
            assert_eq!(spec.gamma, ratio(gp, gq), "{id} gamma");
            assert_eq!(spec.bound_base(), ratio(bp, bq), "{id} bound base");
            assert!(spec.gamma > ratio(0, 1) && spec.gamma < ratio(1, 1));
        }
    }

    #[test]
    fn class_id_round_trip() {
        for id in ClassId::ALL {
            assert_eq!(id.as_str().parse::<ClassId>().unwrap(), id);
        }
        assert!("supersoluble".parse::<ClassId>().is_err());
    }

    #[test]
    fn closure_of_empty_and_singleton() {
        let g = s3();
        assert_eq!(subgroup_closure(&g, &[]).len(), 1);
        for i in 0..g.order() {
            let h = subgroup_closure(&g, &[i]);
            assert_eq!(h.len(), g.element_order(i));
            assert_eq!(g.order() % h.len(), 0); // Lagrange
        }
    }

    #[test]
    fn closure_generates_alternating_on_five() {
        let g = a5();
        let five_cycle = g
            .index_of(&Permutation::from_cycles("(0 1 2 3 4)", 5).unwrap())
            .unwrap();
        let double_transposition = g
            .index_of(&Permutation::from_cycles("(0 1)(2 3)", 5).unwrap())
            .unwrap();
        let h = subgroup_closure(&g, &[five_cycle, double_transposition]);
        assert_eq!(h.len(), 60);
    }

    #[test]
    fn derived_subgroups() {
        let c6 = build(6, &["(0 1 2 3 4 5)"], "C6");
        assert_eq!(derived_subgroup(&c6, &SubgroupSet::full(&c6)).len(), 1);

        let g = s3();
        assert_eq!(derived_subgroup(&g, &SubgroupSet::full(&g)).len(), 3);

        let a = a5();
        assert_eq!(derived_subgroup(&a, &SubgroupSet::full(&a)).len(), 60);
    }

    #[test]
    fn derived_series_of_symmetric_on_four() {
        let g = s4();
        let mut sizes = vec![g.order()];
        let mut cur = SubgroupSet::full(&g);
        loop {
            let next = derived_subgroup(&g, &cur);
            if next.len() == cur.len() {
                break;
            }
            sizes.push(next.len());
            cur = next;
        }
        assert_eq!(sizes, vec![24, 12, 4, 1]);
        assert!(is_soluble(&g, &SubgroupSet::full(&g)));
    }

    #[test]
    fn solubility() {
        let a = a5();
        assert!(!is_soluble(&a, &SubgroupSet::full(&a)));
        for i in 0..a.order() {
            assert!(is_soluble(&a, &subgroup_closure(&a, &[i]))); // cyclic
        }
    }

    #[test]
    fn nilpotency() {
        let d8 = build(4, &["(0 1 2 3)", "(1 3)"], "D8");
        assert_eq!(d8.order(), 8);
        assert!(is_nilpotent(&d8, &SubgroupSet::full(&d8)));

        let q8 = Group::from_generators(
            8,
            &[
                Permutation::from_images(vec![2, 3, 1, 0, 6, 7, 5, 4]).unwrap(),
                Permutation::from_images(vec![4, 5, 7, 6, 1, 0, 2, 3]).unwrap(),
            ],
            "Q8",
            1000,
        )
        .unwrap();
        assert_eq!(q8.order(), 8);
        assert!(is_nilpotent(&q8, &SubgroupSet::full(&q8)));
        assert!(!is_abelian(&q8, &SubgroupSet::full(&q8)));

        let g = s3();
        assert!(!is_nilpotent(&g, &SubgroupSet::full(&g)));

        let d12 = build(6, &["(0 1 2 3 4 5)", "(1 5)(2 4)"], "D12");
        assert_eq!(d12.order(), 12);
        assert!(!is_nilpotent(&d12, &SubgroupSet::full(&d12)));
    }

    #[test]
    fn odd_order() {
        let g = s3();
        assert!(is_odd_order(&subgroup_closure(&g, &[])));
        let rotation = g
            .index_of(&Permutation::from_cycles("(0 1 2)", 3).unwrap())
            .unwrap();
        assert!(is_odd_order(&subgroup_closure(&g, &[rotation])));
        assert!(!is_odd_order(&SubgroupSet::full(&g)));
    }

    #[test]
    fn pair_classification_in_symmetric_on_three() {
        let g = s3();
        for id in ClassId::ALL {
            assert!(pair_in_class(&g, 0, 0, id), "identity pair, {id}");
        }
        let t1 = g
            .index_of(&Permutation::from_cycles("(0 1)", 3).unwrap())
            .unwrap();
        let t2 = g
            .index_of(&Permutation::from_cycles("(0 2)", 3).unwrap())
            .unwrap();
        assert!(!pair_in_class(&g, t1, t2, ClassId::Nilpotent)); // generates all of S3
        assert!(pair_in_class(&g, t1, t1, ClassId::Abelian)); // cyclic
        assert!(!pair_in_class(&g, t1, t1, ClassId::OddOrder));
    }

    #[test]
    fn implication_chain_on_subgroups() {
        let g = s4();
        for x in 0..g.order() {
            for y in x..g.order() {
                let h = subgroup_closure(&g, &[x, y]);
                let (ab, nil, sol) = (
                    is_abelian(&g, &h),
                    is_nilpotent(&g, &h),
                    is_soluble(&g, &h),
                );
                assert!(!ab || nil, "abelian implies nilpotent at ({x},{y})");
                assert!(!nil || sol, "nilpotent implies soluble at ({x},{y})");
            }
        }
    }

    #[test]
    fn pair_classification_symmetry_and_conjugation() {
        let g = s4();
        let samples = [1usize, 5, 11, 17, 23];
        for &x in &samples {
            for &y in &samples {
                for id in ClassId::ALL {
                    assert_eq!(
                        pair_in_class(&g, x, y, id),
                        pair_in_class(&g, y, x, id)
                    );
                    for c in [3usize, 9] {
                        assert_eq!(
                            pair_in_class(&g, g.conjugate(x, c), g.conjugate(y, c), id),
                            pair_in_class(&g, x, y, id)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn fitted_universal_uses_soluble_predicate() {
        let a = a5();
        let full = SubgroupSet::full(&a);
        assert_eq!(
            in_class(&a, &full, ClassId::FittedUniversal),
            in_class(&a, &full, ClassId::Soluble)
        );
    }

    #[test]
    fn generation_probabilities() {
        // S3: 18 of 36 ordered pairs generate (mixed transposition/3-cycle
        // pairs and distinct transposition pairs)
        assert_eq!(generation_probability(&s3()), ratio(1, 2));
        // cyclic groups: an ordered pair generates iff some member does
        let c2 = build(2, &["(0 1)"], "C2");
        assert_eq!(generation_probability(&c2), ratio(3, 4));
        assert_eq!(generation_probability(&a5()), ratio(19, 30));
    }
}
