//! Built-in group families with canonical generators.

use thiserror::Error;

use crate::group::PermGroup;
use crate::perm::Permutation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("{family}({value}) is out of range: {reason}")]
    OutOfRange {
        family: &'static str,
        value: String,
        reason: String,
    },
}

fn cycle_perm(degree: usize, points: &[usize]) -> Permutation {
    let mut images: Vec<usize> = (0..degree).collect();
    for w in points.windows(2) {
        images[w[0]] = w[1];
    }
    if points.len() >= 2 {
        images[*points.last().unwrap()] = points[0];
    }
    Permutation::from_images(images).expect("cycle is a bijection")
}

/// Cyclic group of order `n` acting on `n` points.
pub fn cyclic(n: usize) -> Result<PermGroup, FamilyError> {
    if n == 0 {
        return Err(FamilyError::OutOfRange {
            family: "cyclic",
            value: n.to_string(),
            reason: "order must be positive".into(),
        });
    }
    let gens = if n == 1 {
        Vec::new()
    } else {
        vec![cycle_perm(n, &(0..n).collect::<Vec<_>>())]
    };
    Ok(PermGroup::new(n, gens).expect("valid generators"))
}

/// Dihedral group of order `2n` (symmetries of a regular `n`-gon), `n >= 3`.
pub fn dihedral(n: usize) -> Result<PermGroup, FamilyError> {
    if n < 3 {
        return Err(FamilyError::OutOfRange {
            family: "dihedral",
            value: n.to_string(),
            reason: "the polygon needs at least 3 vertices".into(),
        });
    }
    let rotation = cycle_perm(n, &(0..n).collect::<Vec<_>>());
    // Reflection fixing vertex 1: i -> n - i for the remaining vertices.
    let images: Vec<usize> = (0..n).map(|i| if i == 0 { 0 } else { n - i }).collect();
    let reflection = Permutation::from_images(images).expect("reflection is a bijection");
    Ok(PermGroup::new(n, vec![rotation, reflection]).expect("valid generators"))
}

/// Symmetric group on `n` points.
pub fn symmetric(n: usize) -> Result<PermGroup, FamilyError> {
    if n == 0 {
        return Err(FamilyError::OutOfRange {
            family: "symmetric",
            value: n.to_string(),
            reason: "degree must be positive".into(),
        });
    }
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(cycle_perm(n, &[0, 1]));
    }
    if n >= 3 {
        gens.push(cycle_perm(n, &(0..n).collect::<Vec<_>>()));
    }
    Ok(PermGroup::new(n, gens).expect("valid generators"))
}

/// Alternating group on `n` points.
pub fn alternating(n: usize) -> Result<PermGroup, FamilyError> {
    if n == 0 {
        return Err(FamilyError::OutOfRange {
            family: "alternating",
            value: n.to_string(),
            reason: "degree must be positive".into(),
        });
    }
    let mut gens = Vec::new();
    if n >= 3 {
        gens.push(cycle_perm(n, &[0, 1, 2]));
    }
    if n >= 4 {
        if n % 2 == 1 {
            gens.push(cycle_perm(n, &(0..n).collect::<Vec<_>>()));
        } else {
            gens.push(cycle_perm(n, &(1..n).collect::<Vec<_>>()));
        }
    }
    Ok(PermGroup::new(n, gens).expect("valid generators"))
}

/// Elementary abelian group of order `p^k`: `k` disjoint `p`-cycles.
pub fn elementary_abelian(p: usize, k: usize) -> Result<PermGroup, FamilyError> {
    if !crate::filters::is_prime(p as u64) {
        return Err(FamilyError::OutOfRange {
            family: "elementary_abelian",
            value: format!("{p},{k}"),
            reason: format!("{p} is not prime"),
        });
    }
    if k == 0 {
        return Err(FamilyError::OutOfRange {
            family: "elementary_abelian",
            value: format!("{p},{k}"),
            reason: "rank must be positive".into(),
        });
    }
    let degree = p * k;
    let gens = (0..k)
        .map(|block| cycle_perm(degree, &(block * p..(block + 1) * p).collect::<Vec<_>>()))
        .collect();
    Ok(PermGroup::new(degree, gens).expect("valid generators"))
}

/// Direct product on the disjoint union of the two domains; the second
/// factor's points are relabelled above the first.
pub fn direct_product(a: &PermGroup, b: &PermGroup) -> PermGroup {
    let degree = a.degree() + b.degree();
    let mut gens: Vec<Permutation> = Vec::new();
    for g in a.generators() {
        let mut images: Vec<usize> = g.images().to_vec();
        images.extend(a.degree()..degree);
        gens.push(Permutation::from_images(images).expect("extension is a bijection"));
    }
    for g in b.generators() {
        let mut images: Vec<usize> = (0..a.degree()).collect();
        images.extend(g.images().iter().map(|&x| x + a.degree()));
        gens.push(Permutation::from_images(images).expect("shift is a bijection"));
    }
    PermGroup::new(degree, gens).expect("valid generators")
}

/// Full symmetry group of the dodecahedron: rotations times the central
/// inversion, of order 120.
pub fn dodecahedral() -> PermGroup {
    let a5 = alternating(5).expect("A_5 exists");
    let c2 = cyclic(2).expect("C_2 exists");
    direct_product(&a5, &c2)
}
