//! Exact arithmetic of permutations on a finite domain `{0..degree-1}`.
//!
//! Points are 0-based internally; all parsing and formatting is 1-based
//! cycle notation. The degree is always explicit and never inferred from
//! the largest moved point, so parity within a fixed symmetric group is
//! unambiguous.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("images do not form a bijection on 0..{degree}")]
    NotABijection { degree: usize },
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// Parity of a permutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn xor(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// A bijection on `{0..degree-1}` stored as an image table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Permutation {
        assert!(degree >= 1, "degree must be positive");
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from an image table, validating bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Permutation, PermError> {
        let degree = images.len();
        if degree == 0 {
            return Err(PermError::NotABijection { degree });
        }
        let mut seen = vec![false; degree];
        for &img in &images {
            if img >= degree || seen[img] {
                return Err(PermError::NotABijection { degree });
            }
            seen[img] = true;
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| i == img)
    }

    /// Smallest point moved by this permutation, if any.
    pub fn min_moved(&self) -> Option<usize> {
        self.images.iter().enumerate().find_map(
            |(i, &img)| {
                if i != img {
                    Some(i)
                } else {
                    None
                }
            },
        )
    }

    /// Checked composition: `result(x) = self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.mul(other))
    }

    /// Composition without the degree check. Panics on mismatched degrees.
    pub fn mul(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in mul");
        Permutation {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    /// Repeated composition by square-and-multiply.
    pub fn pow(&self, mut e: u64) -> Permutation {
        let mut result = Permutation::identity(self.degree());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base.clone());
            e >>= 1;
        }
        result
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img] = i;
        }
        Permutation { images }
    }

    /// Conjugate `self` by `t`, i.e. `t * self * t^-1`.
    pub fn conjugate_by(&self, t: &Permutation) -> Permutation {
        assert_eq!(self.degree(), t.degree(), "degree mismatch in conjugate");
        let mut images = vec![0; self.degree()];
        for (i, &img) in self.images.iter().enumerate() {
            images[t.images[i]] = t.images[img];
        }
        Permutation { images }
    }

    /// Parity as `(degree - number of cycles including fixed points) mod 2`.
    pub fn parity(&self) -> Parity {
        let degree = self.degree();
        let mut seen = vec![false; degree];
        let mut cycles = 0usize;
        for start in 0..degree {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
            }
        }
        if (degree - cycles) % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Multiplicative order: the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        let mut result: u64 = 1;
        for cycle in self.cycles().cycles() {
            result = lcm_u64(result, cycle.len() as u64);
        }
        result
    }

    /// Canonical cycle decomposition (fixed points omitted, each cycle
    /// rotated so its minimum comes first, cycles sorted by first entry).
    pub fn cycles(&self) -> CycleDecomposition {
        let degree = self.degree();
        let mut seen = vec![false; degree];
        let mut cycles = Vec::new();
        for start in 0..degree {
            if seen[start] || self.images[start] == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            cycles.push(cycle);
        }
        // Scanning from the smallest point means each cycle already starts
        // at its minimum and the list is sorted by first entry.
        CycleDecomposition { degree, cycles }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{}]({})", self.degree(), self.cycles())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.cycles().fmt(f)
    }
}

fn lcm_u64(a: u64, b: u64) -> u64 {
    let g = num_integer::gcd(a, b);
    let r = (a / g) as u128 * b as u128;
    assert!(r <= u64::MAX as u128, "element order exceeds u64");
    r as u64
}

/// Disjoint cycles of a permutation in canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleDecomposition {
    degree: usize,
    cycles: Vec<Vec<usize>>,
}

impl CycleDecomposition {
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The cycles, 0-based, each of length >= 2, pairwise disjoint.
    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn to_permutation(&self) -> Permutation {
        let mut perm = Permutation::identity(self.degree);
        for cycle in &self.cycles {
            for window in cycle.windows(2) {
                perm.images[window[0]] = window[1];
            }
            perm.images[*cycle.last().unwrap()] = cycle[0];
        }
        perm
    }
}

/// Formats 1-based with space separators; the identity formats as the empty
/// string so that `parse_cycles` round-trips every permutation.
impl fmt::Display for CycleDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cycle in &self.cycles {
            write!(f, "(")?;
            for (i, &pt) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", pt + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Parses a whitespace-tolerant product of parenthesized cycles over 1-based
/// points, applied right-to-left. Empty input yields the identity.
///
/// Grammar: `perm := cycle* ; cycle := '(' int (sep int)+ ')' ; sep := ',' | ws`.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation, PermError> {
    assert!(degree >= 1, "degree must be positive");
    let bytes = text.as_bytes();
    let mut pos = 0usize;
    let mut cycles: Vec<Vec<usize>> = Vec::new();

    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };

    skip_ws(&mut pos);
    while pos < bytes.len() {
        if bytes[pos] != b'(' {
            return Err(PermError::Parse {
                pos,
                msg: format!("expected '(' but found {:?}", bytes[pos] as char),
            });
        }
        pos += 1;
        let mut cycle: Vec<usize> = Vec::new();
        let mut seen_in_cycle = vec![false; degree];
        loop {
            skip_ws(&mut pos);
            if pos < bytes.len() && bytes[pos] == b')' {
                pos += 1;
                break;
            }
            if !cycle.is_empty() {
                // optional comma separator between points
                if pos < bytes.len() && bytes[pos] == b',' {
                    pos += 1;
                    skip_ws(&mut pos);
                }
            }
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if pos == start {
                return Err(PermError::Parse {
                    pos,
                    msg: if pos < bytes.len() {
                        format!("expected a point but found {:?}", bytes[pos] as char)
                    } else {
                        "unexpected end of input inside a cycle".to_string()
                    },
                });
            }
            let value: u64 = text[start..pos].parse().map_err(|_| PermError::Parse {
                pos: start,
                msg: "point does not fit in 64 bits".to_string(),
            })?;
            if value == 0 {
                return Err(PermError::Parse {
                    pos: start,
                    msg: "points are 1-based; 0 is not a point".to_string(),
                });
            }
            if value > degree as u64 {
                return Err(PermError::Parse {
                    pos: start,
                    msg: format!("point {value} exceeds degree {degree}"),
                });
            }
            let pt = (value - 1) as usize;
            if seen_in_cycle[pt] {
                return Err(PermError::Parse {
                    pos: start,
                    msg: format!("point {value} repeated inside one cycle"),
                });
            }
            seen_in_cycle[pt] = true;
            cycle.push(pt);
        }
        if cycle.len() < 2 {
            return Err(PermError::Parse {
                pos,
                msg: "a cycle must contain at least two points".to_string(),
            });
        }
        cycles.push(cycle);
        skip_ws(&mut pos);
    }

    // Product applied right-to-left, matching compose: result(x) = c1(c2(...(x))).
    let mut result = Permutation::identity(degree);
    for cycle in cycles.iter().rev() {
        let mut next = Permutation::identity(degree);
        for window in cycle.windows(2) {
            next.images[window[0]] = window[1];
        }
        next.images[*cycle.last().unwrap()] = cycle[0];
        result = next.mul(&result);
    }
    Ok(result)
}

/// Lexicographic comparison helper used for deterministic tie-breaking.
pub fn cmp_images(a: &Permutation, b: &Permutation) -> Ordering {
    a.images.cmp(&b.images)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(spec: &str, degree: usize) -> Permutation {
        parse_cycles(spec, degree).unwrap()
    }

    /// Independent oracle: apply cycles right-to-left to every point.
    fn apply_cycle_product(cycles: &[Vec<usize>], mut x: usize) -> usize {
        for cycle in cycles.iter().rev() {
            if let Some(pos) = cycle.iter().position(|&c| c == x) {
                x = cycle[(pos + 1) % cycle.len()];
            }
        }
        x
    }

    #[test]
    fn parse_empty_is_identity() {
        assert_eq!(perm("", 4), Permutation::identity(4));
        assert_eq!(perm("   ", 4), Permutation::identity(4));
    }

    #[test]
    fn parse_double_cycle() {
        // sigma = (1..p)(p+1..2p) with p = 3
        let sigma = perm("(1 2 3)(4 5 6)", 6);
        assert_eq!(sigma.images(), &[1, 2, 0, 4, 5, 3]);
    }

    #[test]
    fn parse_overlapping_cycles_compose_right_to_left() {
        let product = perm("(1 2)(1 3)", 3);
        // Oracle 1: hand table for the 3-cycle (1 3 2).
        assert_eq!(product.images(), &[2, 0, 1]);
        // Oracle 2: compose the two parsed factors.
        let left = perm("(1 2)", 3);
        let right = perm("(1 3)", 3);
        assert_eq!(left.compose(&right).unwrap(), product);
        // Oracle 3: pointwise application of the cycle product.
        for x in 0..3 {
            assert_eq!(
                product.image(x),
                apply_cycle_product(&[vec![0, 1], vec![0, 2]], x)
            );
        }
    }

    #[test]
    fn parse_accepts_commas_and_whitespace() {
        assert_eq!(perm("(1,2,3)", 3), perm("( 1  2\t3 )", 3));
    }

    #[test]
    fn parse_rejects_repeated_point_in_one_cycle() {
        let err = parse_cycles("(1 2 1)", 3).unwrap_err();
        match err {
            PermError::Parse { pos, msg } => {
                assert_eq!(pos, 5);
                assert!(msg.contains("repeated"), "{msg}");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn parse_rejects_point_beyond_degree() {
        let err = parse_cycles("(1 2 3 4)", 3).unwrap_err();
        match err {
            PermError::Parse { pos, msg } => {
                assert_eq!(pos, 7);
                assert!(msg.contains("exceeds degree"), "{msg}");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn parse_rejects_malformed_input() {
        assert!(parse_cycles("(1 2", 4).is_err());
        assert!(parse_cycles(")", 4).is_err());
        assert!(parse_cycles("(1)", 4).is_err());
        assert!(parse_cycles("()", 4).is_err());
        assert!(parse_cycles("1 2", 4).is_err());
        assert!(parse_cycles("(0 1)", 4).is_err());
    }

    #[test]
    fn compose_identity_laws() {
        let g = perm("(1 4)(2 3 5)", 5);
        let id = Permutation::identity(5);
        assert_eq!(g.compose(&id).unwrap(), g);
        assert_eq!(id.compose(&g).unwrap(), g);
        assert_eq!(g.compose(&g.inverse()).unwrap(), id);
    }

    #[test]
    fn compose_three_cycle_squares() {
        let c = perm("(1 2 3)", 3);
        // Brute-force table: c(c(x)) for each point.
        let expected: Vec<usize> = (0..3).map(|x| c.image(c.image(x))).collect();
        let squared = c.compose(&c).unwrap();
        assert_eq!(squared.images(), expected.as_slice());
        assert_eq!(squared, perm("(1 3 2)", 3));
    }

    #[test]
    fn compose_rejects_degree_mismatch() {
        let a = perm("(1 2)", 2);
        let b = perm("(1 2)", 3);
        assert!(matches!(
            a.compose(&b),
            Err(PermError::DegreeMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn parity_values() {
        assert_eq!(Permutation::identity(4).parity(), Parity::Even);
        // a p-cycle for odd p is even
        assert_eq!(perm("(1 2 3 4 5)", 5).parity(), Parity::Even);
        // tau = (1 4)(2 5)(3 6): odd, since p = 3 is odd
        assert_eq!(perm("(1 4)(2 5)(3 6)", 6).parity(), Parity::Odd);
        assert_eq!(perm("(1 2)", 2).parity(), Parity::Odd);
    }

    #[test]
    fn element_order_values() {
        assert_eq!(Permutation::identity(3).order(), 1);
        let g = perm("(1 2 3)(4 5 6 7)", 7);
        // Oracle: repeated composition until the identity comes back.
        let mut power = g.clone();
        let mut count = 1u64;
        while !power.is_identity() {
            power = power.mul(&g);
            count += 1;
        }
        assert_eq!(count, 12);
        assert_eq!(g.order(), count);

        let double_17 = perm(
            "(1 2 3 4 5 6 7 8 9 10 11 12 13 14 15 16 17)\
             (18 19 20 21 22 23 24 25 26 27 28 29 30 31 32 33 34)",
            34,
        );
        assert_eq!(double_17.order(), 17);
    }

    #[test]
    fn from_images_validates_bijection() {
        assert!(Permutation::from_images(vec![0, 1, 2]).is_ok());
        assert!(Permutation::from_images(vec![0, 0, 2]).is_err());
        assert!(Permutation::from_images(vec![0, 3, 1]).is_err());
        assert!(Permutation::from_images(vec![]).is_err());
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let g = perm("(1 2 3 4 5)(6 7)", 7);
        let mut acc = Permutation::identity(7);
        for e in 0..=12u64 {
            assert_eq!(g.pow(e), acc, "exponent {e}");
            acc = acc.mul(&g);
        }
    }
}

#[cfg(test)]
mod prop_tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_perm(max_degree: usize) -> impl Strategy<Value = Permutation> {
        (1..=max_degree).prop_flat_map(|d| {
            proptest::collection::vec(any::<u64>(), d).prop_map(move |keys| {
                let mut idx: Vec<usize> = (0..d).collect();
                idx.sort_by_key(|&i| (keys[i], i));
                Permutation::from_images(idx).unwrap()
            })
        })
    }

    fn arb_perm_pair(max_degree: usize) -> impl Strategy<Value = (Permutation, Permutation)> {
        arb_perm(max_degree).prop_flat_map(|a| {
            let d = a.degree();
            (Just(a), arb_perm_fixed(d))
        })
    }

    fn arb_perm_fixed(d: usize) -> impl Strategy<Value = Permutation> {
        proptest::collection::vec(any::<u64>(), d).prop_map(move |keys| {
            let mut idx: Vec<usize> = (0..d).collect();
            idx.sort_by_key(|&i| (keys[i], i));
            Permutation::from_images(idx).unwrap()
        })
    }

    proptest! {
        #[test]
        fn roundtrip_through_cycle_notation(p in arb_perm(64)) {
            let text = p.cycles().to_string();
            let back = parse_cycles(&text, p.degree()).unwrap();
            prop_assert_eq!(back, p);
        }

        #[test]
        fn parity_is_a_homomorphism((a, b) in arb_perm_pair(32)) {
            let product = a.compose(&b).unwrap();
            prop_assert_eq!(product.parity(), a.parity().xor(b.parity()));
        }

        #[test]
        fn composition_is_associative(
            (a, b) in arb_perm_pair(24),
            keys in proptest::collection::vec(any::<u64>(), 24),
        ) {
            let d = a.degree();
            let mut idx: Vec<usize> = (0..d).collect();
            idx.sort_by_key(|&i| (keys[i % keys.len()], i));
            let c = Permutation::from_images(idx).unwrap();
            let left = a.compose(&b).unwrap().compose(&c).unwrap();
            let right = a.compose(&b.compose(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn order_equals_cyclic_closure_size(p in arb_perm(48)) {
            let mut count = 1u64;
            let mut power = p.clone();
            while !power.is_identity() {
                power = power.mul(&p);
                count += 1;
            }
            prop_assert_eq!(p.order(), count);
        }

        #[test]
        fn decomposition_is_canonical(p in arb_perm(48)) {
            let dec = p.cycles();
            prop_assert_eq!(dec.to_permutation(), p.clone());
            for cycle in dec.cycles() {
                prop_assert!(cycle.len() >= 2);
                prop_assert_eq!(*cycle.iter().min().unwrap(), cycle[0]);
            }
            let firsts: Vec<usize> = dec.cycles().iter().map(|c| c[0]).collect();
            let mut sorted = firsts.clone();
            sorted.sort_unstable();
            prop_assert_eq!(firsts, sorted);
        }
    }
}
