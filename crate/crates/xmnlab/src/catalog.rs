//! Named group constructors and the fixed verification catalog: cyclic and
//! dihedral families, small symmetric and alternating groups, three sporadic
//! small constructions, and pairwise direct products.

use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::Permutation;
use serde::Serialize;

/// Expected class memberships, used as test fixtures against the computed
/// predicates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KnownFlags {
    pub abelian: bool,
    pub nilpotent: bool,
    pub soluble: bool,
    pub odd: bool,
}

impl KnownFlags {
    fn and(self, other: KnownFlags) -> KnownFlags {
        KnownFlags {
            abelian: self.abelian && other.abelian,
            nilpotent: self.nilpotent && other.nilpotent,
            soluble: self.soluble && other.soluble,
            odd: self.odd && other.odd,
        }
    }
}

/// Recipe for building a catalog group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Constructor {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    Quaternion8,
    Sl23,
    Frobenius20,
    Product(Box<Constructor>, Box<Constructor>),
}

/// A named catalog group with its expected order and class fixtures.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub constructor: Constructor,
    pub expected_order: usize,
    pub flags: KnownFlags,
}

impl CatalogEntry {
    pub fn build(&self, order_cap: usize) -> Result<Group> {
        let g = self.constructor.build(order_cap)?;
        Ok(g.with_name(self.name.clone()))
    }
}

fn cyc(s: &str, d: usize) -> Permutation {
    Permutation::from_cycles(s, d).expect("valid constructor cycles")
}

fn rotation_images(k: usize) -> Vec<usize> {
    (0..k).map(|i| (i + 1) % k).collect()
}

fn reflection_images(k: usize) -> Vec<usize> {
    (0..k).map(|i| (k - i) % k).collect()
}

fn even_long_cycle_images(k: usize) -> Vec<usize> {
    if k % 2 == 1 {
        rotation_images(k)
    } else {
        (0..k)
            .map(|i| if i == 0 { 0 } else { i % (k - 1) + 1 })
            .collect()
    }
}

fn quaternion8_images() -> [Vec<usize>; 2] {
    [vec![2, 3, 1, 0, 6, 7, 5, 4], vec![4, 5, 7, 6, 1, 0, 2, 3]]
}

fn sl2_3_images() -> [Vec<usize>; 2] {
    let vec_index = |a: usize, b: usize| -> usize { 3 * a + b - 1 };
    let act = |f: &dyn Fn(usize, usize) -> (usize, usize)| -> Vec<usize> {
        let mut images = vec![0; 8];
        for a in 0..3 {
            for b in 0..3 {
                if a == 0 && b == 0 {
                    continue;
                }
                let (c, d) = f(a, b);
                images[vec_index(a, b)] = vec_index(c, d);
            }
        }
        images
    };
    [act(&|a, b| ((a + b) % 3, b)), act(&|a, b| (a, (a + b) % 3))]
}

fn frobenius20_images() -> [Vec<usize>; 2] {
    [rotation_images(5), (0..5).map(|i| 2 * i % 5).collect()]
}

/// Cyclic group of order k on k points (one point for k = 1).
pub fn make_cyclic(k: usize, order_cap: usize) -> Result<Group> {
    if k == 0 {
        return Err(Error::InvalidInput("cyclic order must be positive".into()));
    }
    if k == 1 {
        return Ok(Group::trivial(1, "C1"));
    }
    Group::from_generators(
        k,
        &[Permutation::from_images(rotation_images(k))?],
        format!("C{k}"),
        order_cap,
    )
}

/// Dihedral group of order 2k on k points, k ≥ 3: a k-cycle and the
/// reflection fixing point 0.
pub fn make_dihedral(k: usize, order_cap: usize) -> Result<Group> {
    if k < 3 {
        return Err(Error::InvalidInput(
            "dihedral construction needs at least 3 points".into(),
        ));
    }
    Group::from_generators(
        k,
        &[
            Permutation::from_images(rotation_images(k))?,
            Permutation::from_images(reflection_images(k))?,
        ],
        format!("D{}", 2 * k),
        order_cap,
    )
}

/// Symmetric group on k points, k ≥ 2: a transposition and a k-cycle.
pub fn make_symmetric(k: usize, order_cap: usize) -> Result<Group> {
    if k < 2 {
        return Err(Error::InvalidInput(
            "symmetric construction needs at least 2 points".into(),
        ));
    }
    Group::from_generators(
        k,
        &[cyc("(0 1)", k), Permutation::from_images(rotation_images(k))?],
        format!("S{k}"),
        order_cap,
    )
}

/// Alternating group on k points, k ≥ 3: a 3-cycle and an even long cycle
/// (the k-cycle when k is odd, a (k−1)-cycle otherwise).
pub fn make_alternating(k: usize, order_cap: usize) -> Result<Group> {
    if k < 3 {
        return Err(Error::InvalidInput(
            "alternating construction needs at least 3 points".into(),
        ));
    }
    let [a, b] = [
        cyc("(0 1 2)", k),
        Permutation::from_images(even_long_cycle_images(k))?,
    ];
    Group::from_generators(k, &[a, b], format!("A{k}"), order_cap)
}

/// Quaternion group of order 8 via its regular action, elements ordered
/// 1, −1, i, −i, j, −j, k, −k; the generators are left multiplication by
/// i and by j.
pub fn make_quaternion8(order_cap: usize) -> Result<Group> {
    let [i, j] = quaternion8_images();
    Group::from_generators(
        8,
        &[Permutation::from_images(i)?, Permutation::from_images(j)?],
        "Q8",
        order_cap,
    )
}

/// SL(2,3) acting on the 8 nonzero vectors of F3², generated by the two
/// elementary transvections.
pub fn make_sl2_3(order_cap: usize) -> Result<Group> {
    let [upper, lower] = sl2_3_images();
    Group::from_generators(
        8,
        &[
            Permutation::from_images(upper)?,
            Permutation::from_images(lower)?,
        ],
        "SL(2,3)",
        order_cap,
    )
}

/// Frobenius group of order 20 on 5 points: x ↦ x+1 and x ↦ 2x mod 5.
pub fn make_frobenius20(order_cap: usize) -> Result<Group> {
    let [add, double] = frobenius20_images();
    Group::from_generators(
        5,
        &[
            Permutation::from_images(add)?,
            Permutation::from_images(double)?,
        ],
        "F20",
        order_cap,
    )
}

/// Direct product acting on the disjoint union of the two point sets.
/// Built from the full element lists, so the order is exactly |G|·|H|.
pub fn direct_product(g: &Group, h: &Group, order_cap: usize) -> Result<Group> {
    let order = g.order().checked_mul(h.order()).ok_or_else(|| {
        Error::OrderCapExceeded { cap: order_cap }
    })?;
    if order > order_cap {
        return Err(Error::OrderCapExceeded { cap: order_cap });
    }
    let degree = g.degree() + h.degree();
    let mut elements = Vec::with_capacity(order);
    for a in g.elements() {
        for b in h.elements() {
            let mut images = Vec::with_capacity(degree);
            images.extend_from_slice(a.images());
            images.extend(b.images().iter().map(|&i| i + g.degree()));
            elements.push(Permutation::from_images(images)?);
        }
    }
    Group::from_elements(
        format!("{}x{}", g.name(), h.name()),
        degree,
        elements,
        order_cap,
    )
}

impl Constructor {
    pub fn build(&self, order_cap: usize) -> Result<Group> {
        match self {
            Constructor::Cyclic(k) => make_cyclic(*k, order_cap),
            Constructor::Dihedral(k) => make_dihedral(*k, order_cap),
            Constructor::Symmetric(k) => make_symmetric(*k, order_cap),
            Constructor::Alternating(k) => make_alternating(*k, order_cap),
            Constructor::Quaternion8 => make_quaternion8(order_cap),
            Constructor::Sl23 => make_sl2_3(order_cap),
            Constructor::Frobenius20 => make_frobenius20(order_cap),
            Constructor::Product(a, b) => {
                let left = a.build(order_cap)?;
                let right = b.build(order_cap)?;
                direct_product(&left, &right, order_cap)
            }
        }
    }

    /// Points the construction acts on.
    pub fn degree(&self) -> usize {
        match self {
            Constructor::Cyclic(k) => (*k).max(1),
            Constructor::Dihedral(k)
            | Constructor::Symmetric(k)
            | Constructor::Alternating(k) => *k,
            Constructor::Quaternion8 | Constructor::Sl23 => 8,
            Constructor::Frobenius20 => 5,
            Constructor::Product(a, b) => a.degree() + b.degree(),
        }
    }

    /// The defining generator set. A product inherits both factors'
    /// generators, each acting on its own block of points.
    pub fn generators(&self) -> Result<Vec<Permutation>> {
        let perms = |vs: Vec<Vec<usize>>| -> Result<Vec<Permutation>> {
            vs.into_iter().map(Permutation::from_images).collect()
        };
        match self {
            Constructor::Cyclic(0) => {
                Err(Error::InvalidInput("cyclic order must be positive".into()))
            }
            Constructor::Cyclic(1) => Ok(vec![Permutation::identity(1)]),
            Constructor::Cyclic(k) => perms(vec![rotation_images(*k)]),
            Constructor::Dihedral(k) => {
                perms(vec![rotation_images(*k), reflection_images(*k)])
            }
            Constructor::Symmetric(k) => Ok(vec![
                cyc("(0 1)", *k),
                Permutation::from_images(rotation_images(*k))?,
            ]),
            Constructor::Alternating(k) => Ok(vec![
                cyc("(0 1 2)", *k),
                Permutation::from_images(even_long_cycle_images(*k))?,
            ]),
            Constructor::Quaternion8 => perms(quaternion8_images().into()),
            Constructor::Sl23 => perms(sl2_3_images().into()),
            Constructor::Frobenius20 => perms(frobenius20_images().into()),
            Constructor::Product(a, b) => {
                let (da, db) = (a.degree(), b.degree());
                let mut gens = Vec::new();
                for p in a.generators()? {
                    let mut images = p.images().to_vec();
                    images.extend(da..da + db);
                    gens.push(Permutation::from_images(images)?);
                }
                for p in b.generators()? {
                    let mut images: Vec<usize> = (0..da).collect();
                    images.extend(p.images().iter().map(|&i| i + da));
                    gens.push(Permutation::from_images(images)?);
                }
                Ok(gens)
            }
        }
    }
}

fn factorial(k: usize) -> usize {
    (1..=k).product()
}

fn base_entries(max_order: usize) -> Vec<CatalogEntry> {
    let mut entries = Vec::new();
    for k in 1..=max_order {
        entries.push(CatalogEntry {
            name: format!("C{k}"),
            constructor: Constructor::Cyclic(k),
            expected_order: k,
            flags: KnownFlags {
                abelian: true,
                nilpotent: true,
                soluble: true,
                odd: k % 2 == 1,
            },
        });
    }
    for k in 3.. {
        if 2 * k > max_order {
            break;
        }
        entries.push(CatalogEntry {
            name: format!("D{}", 2 * k),
            constructor: Constructor::Dihedral(k),
            expected_order: 2 * k,
            flags: KnownFlags {
                abelian: false,
                nilpotent: k.is_power_of_two(),
                soluble: true,
                odd: false,
            },
        });
    }
    for k in 2..=5 {
        let order = factorial(k);
        if order > max_order {
            break;
        }
        entries.push(CatalogEntry {
            name: format!("S{k}"),
            constructor: Constructor::Symmetric(k),
            expected_order: order,
            flags: KnownFlags {
                abelian: k <= 2,
                nilpotent: k <= 2,
                soluble: k <= 4,
                odd: false,
            },
        });
    }
    for k in 3..=5 {
        let order = factorial(k) / 2;
        if order > max_order {
            break;
        }
        entries.push(CatalogEntry {
            name: format!("A{k}"),
            constructor: Constructor::Alternating(k),
            expected_order: order,
            flags: KnownFlags {
                abelian: k == 3,
                nilpotent: k == 3,
                soluble: k <= 4,
                odd: k == 3,
            },
        });
    }
    let sporadic = [
        (
            "Q8",
            Constructor::Quaternion8,
            8,
            KnownFlags {
                abelian: false,
                nilpotent: true,
                soluble: true,
                odd: false,
            },
        ),
        (
            "F20",
            Constructor::Frobenius20,
            20,
            KnownFlags {
                abelian: false,
                nilpotent: false,
                soluble: true,
                odd: false,
            },
        ),
        (
            "SL(2,3)",
            Constructor::Sl23,
            24,
            KnownFlags {
                abelian: false,
                nilpotent: false,
                soluble: true,
                odd: false,
            },
        ),
    ];
    for (name, constructor, order, flags) in sporadic {
        if order <= max_order {
            entries.push(CatalogEntry {
                name: name.to_string(),
                constructor,
                expected_order: order,
                flags,
            });
        }
    }
    entries
}

/// The deterministic catalog up to `max_order`: the base families plus all
/// pairwise direct products of nontrivial bases that fit. Names are unique;
/// duplicate isomorphism types under different names are intentional.
pub fn catalog_scan(max_order: usize) -> Vec<CatalogEntry> {
    let base = base_entries(max_order);
    let mut entries = base.clone();
    for (i, a) in base.iter().enumerate() {
        if a.expected_order == 1 {
            continue;
        }
        for b in &base[i..] {
            let order = match a.expected_order.checked_mul(b.expected_order) {
                Some(o) if o <= max_order => o,
                _ => continue,
            };
            entries.push(CatalogEntry {
                name: format!("{}x{}", a.name, b.name),
                constructor: Constructor::Product(
                    Box::new(a.constructor.clone()),
                    Box::new(b.constructor.clone()),
                ),
                expected_order: order,
                flags: a.flags.and(b.flags),
            });
        }
    }
    entries
}

/// Resolves a catalog-style name: base family names, or factors joined by
/// `x` for direct products.
pub fn parse_group_name(name: &str, order_cap: usize) -> Result<Group> {
    let factors: Vec<&str> = name.split('x').collect();
    if factors.iter().any(|f| f.is_empty()) {
        return Err(Error::UnknownGroup(name.to_string()));
    }
    let mut groups = factors
        .iter()
        .map(|f| parse_base_name(f, order_cap))
        .collect::<Result<Vec<Group>>>()?;
    let mut acc = groups.remove(0);
    for g in groups {
        acc = direct_product(&acc, &g, order_cap)?;
    }
    Ok(acc)
}

fn parse_base_name(name: &str, order_cap: usize) -> Result<Group> {
    let unknown = || Error::UnknownGroup(name.to_string());
    match name {
        "Q8" => return make_quaternion8(order_cap),
        "SL(2,3)" => return make_sl2_3(order_cap),
        "F20" => return make_frobenius20(order_cap),
        _ => {}
    }
    if !name.is_char_boundary(1) {
        return Err(unknown());
    }
    let (family, digits) = name.split_at(1);
    let k: usize = digits.parse().map_err(|_| unknown())?;
    match family {
        "C" => make_cyclic(k, order_cap),
        "D" => {
            if k % 2 != 0 || k < 6 {
                return Err(unknown());
            }
            make_dihedral(k / 2, order_cap)
        }
        "S" => {
            if k < 2 {
                return Err(unknown());
            }
            make_symmetric(k, order_cap)
        }
        "A" => {
            if k < 3 {
                return Err(unknown());
            }
            make_alternating(k, order_cap)
        }
        _ => Err(unknown()),
    }
}
