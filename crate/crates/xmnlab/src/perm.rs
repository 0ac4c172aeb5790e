//! Permutations of the points `0..d-1`, stored as explicit image arrays.
//!
//! Composition is right-to-left: `p.compose(&q)` applies `q` first, then `p`.

use crate::error::{Error, Result};
use num::integer::lcm;
use std::fmt;

/// A bijection on the points `0..degree()-1`.
///
/// ```
/// use xmnlab::Permutation;
///
/// let r = Permutation::from_cycles("(0 1 2)", 3).unwrap();
/// assert_eq!(r.compose(&r).unwrap(), Permutation::from_cycles("(0 2 1)", 3).unwrap());
/// assert_eq!(r.order(), 3);
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// The identity on `degree` points.
    pub fn identity(degree: usize) -> Permutation {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from the image array `images[i] = p(i)`,
    /// rejecting anything that is not a bijection on `0..images.len()`.
    pub fn from_images(images: Vec<usize>) -> Result<Permutation> {
        if images.is_empty() {
            return Err(Error::NotAPermutation("degree must be at least 1".into()));
        }
        let d = images.len();
        let mut seen = vec![false; d];
        for &v in &images {
            if v >= d {
                return Err(Error::NotAPermutation(format!(
                    "image {v} out of range for degree {d}"
                )));
            }
            if seen[v] {
                return Err(Error::NotAPermutation(format!("image {v} repeated")));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    /// Parses cycle notation such as `"(0 1 2)(3 4)"` on a given degree.
    /// Points may be separated by spaces or commas; omitted points are fixed.
    /// `"()"` and the empty string denote the identity.
    pub fn from_cycles(input: &str, degree: usize) -> Result<Permutation> {
        let err = |reason: &str| Error::CycleParse {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        if degree == 0 {
            return Err(err("degree must be at least 1"));
        }
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        let text = input.trim();
        let mut rest = text;
        while !rest.is_empty() {
            let open = rest
                .find('(')
                .ok_or_else(|| err("expected '(' starting a cycle"))?;
            if !rest[..open].trim().is_empty() {
                return Err(err("unexpected text between cycles"));
            }
            let close = rest[open..]
                .find(')')
                .ok_or_else(|| err("unbalanced parenthesis"))?
                + open;
            let body = &rest[open + 1..close];
            let mut cycle = Vec::new();
            for token in body.split(|c: char| c.is_whitespace() || c == ',') {
                if token.is_empty() {
                    continue;
                }
                let point: usize = token
                    .parse()
                    .map_err(|_| err(&format!("invalid point {token:?}")))?;
                if point >= degree {
                    return Err(err(&format!("point {point} out of range for degree {degree}")));
                }
                if used[point] {
                    return Err(err(&format!("point {point} appears twice")));
                }
                used[point] = true;
                cycle.push(point);
            }
            for (i, &a) in cycle.iter().enumerate() {
                images[a] = cycle[(i + 1) % cycle.len()];
            }
            rest = &rest[close + 1..];
        }
        Permutation::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Image of a single point.
    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Composition `self ∘ other`: `other` acts first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(Permutation {
            images: compose_images(&self.images, &other.images),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v] = i;
        }
        Permutation { images }
    }

    /// Multiplicative order: the least `k >= 1` with `p^k = identity`,
    /// computed as the lcm of the cycle lengths.
    pub fn order(&self) -> usize {
        self.cycles_with_fixed()
            .into_iter()
            .map(|c| c.len())
            .fold(1, lcm)
    }

    /// Nontrivial cycles, each starting at its least point, sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        self.cycles_with_fixed()
            .into_iter()
            .filter(|c| c.len() > 1)
            .collect()
    }

    fn cycles_with_fixed(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.images.len()];
        let mut cycles = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut point = self.images[start];
            while point != start {
                seen[point] = true;
                cycle.push(point);
                point = self.images[point];
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Cycle notation with fixed points omitted; `"()"` for the identity.
    pub fn cycle_notation(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let mut out = String::new();
        for cycle in cycles {
            out.push('(');
            for (i, point) in cycle.iter().enumerate() {
                if i > 0 {
                    out.push(' ');
                }
                out.push_str(&point.to_string());
            }
            out.push(')');
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycle_notation())
    }
}

/// Raw image-array composition, `a` after `b`. Lengths must agree.
pub(crate) fn compose_images(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&bi| a[bi]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(images: &[usize]) -> Permutation {
        Permutation::from_images(images.to_vec()).unwrap()
    }

    #[test]
    fn identity_composes_trivially() {
        let p = perm(&[1, 2, 0]);
        let id = Permutation::identity(3);
        assert_eq!(id.compose(&p).unwrap(), p);
        assert_eq!(p.compose(&id).unwrap(), p);
    }

    #[test]
    fn involution_squares_to_identity() {
        let t = perm(&[1, 0]);
        assert_eq!(t.compose(&t).unwrap(), Permutation::identity(2));
    }

    #[test]
    fn three_cycle_squared() {
        // (0 1 2) applied twice sends 0 -> 2, 1 -> 0, 2 -> 1, i.e. (0 2 1).
        let r = Permutation::from_cycles("(0 1 2)", 3).unwrap();
        let rr = r.compose(&r).unwrap();
        assert_eq!(rr, Permutation::from_cycles("(0 2 1)", 3).unwrap());
    }

    #[test]
    fn degree_mismatch_rejected() {
        let p = Permutation::identity(2);
        let q = Permutation::identity(3);
        assert!(matches!(
            p.compose(&q),
            Err(Error::DegreeMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn orders() {
        assert_eq!(Permutation::identity(4).order(), 1);
        assert_eq!(Permutation::from_cycles("(0 1)(2 3 4)", 5).unwrap().order(), 6);
        assert_eq!(Permutation::from_cycles("(0 1 2 3 4)", 5).unwrap().order(), 5);
    }

    #[test]
    fn inverse_roundtrip() {
        let p = perm(&[2, 0, 3, 1]);
        assert!(p.compose(&p.inverse()).unwrap().is_identity());
        assert!(p.inverse().compose(&p).unwrap().is_identity());
    }

    #[test]
    fn bad_image_arrays_rejected() {
        assert!(Permutation::from_images(vec![]).is_err());
        assert!(Permutation::from_images(vec![0, 0]).is_err());
        assert!(Permutation::from_images(vec![0, 2]).is_err());
    }

    #[test]
    fn cycle_notation_roundtrip() {
        let p = Permutation::from_cycles("(0 1 2)(3 4)", 6).unwrap();
        assert_eq!(p.cycle_notation(), "(0 1 2)(3 4)");
        assert_eq!(Permutation::from_cycles(p.cycle_notation().as_str(), 6).unwrap(), p);
        assert_eq!(Permutation::identity(3).cycle_notation(), "()");
        assert_eq!(Permutation::from_cycles("()", 3).unwrap(), Permutation::identity(3));
        assert_eq!(Permutation::from_cycles("", 3).unwrap(), Permutation::identity(3));
    }

    #[test]
    fn cycle_parse_errors() {
        assert!(Permutation::from_cycles("(0 1", 3).is_err());
        assert!(Permutation::from_cycles("(0 5)", 3).is_err());
        assert!(Permutation::from_cycles("(0 1)(1 2)", 3).is_err());
        assert!(Permutation::from_cycles("(0 x)", 3).is_err());
    }
}
