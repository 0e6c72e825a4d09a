//! Sylow machinery: construction and counting of Sylow p-subgroups, p-core
//! and conjugation-action kernel, and concrete verifiers for the auxiliary
//! structure results used by the derivation engine (minimal-intersection
//! Sylow pairs, the double-cycle centralizer computation, the N/C quotient,
//! and the normal complement of a cyclic Sylow 2-subgroup).

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use crate::caps::Caps;
use crate::filters::{self, is_prime};
use crate::group::{conjugate_key, subgroup_key, EnginePath, GroupError, PermGroup};
use crate::perm::{Parity, Permutation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SylowError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("the Sylow {p}-subgroup has order {order}, not {p}")]
    SylowNotPrimeOrder { p: u64, order: u64 },
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Everything the engine knows about Syl_p(G) for one (G, p).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SylowReport {
    pub p: u64,
    pub sylow_order: u64,
    pub count: u64,
    pub normalizer_order: u64,
    pub p_core_order: u64,
    pub action_kernel_order: u64,
}

/// A deterministic Sylow p-subgroup of `g`.
///
/// Construction: take the first element (in lexicographic enumeration order)
/// of order divisible by p and power it up to a p-element; while the current
/// p-subgroup P is smaller than the full p-part, extend it by the first
/// p-element of N(P) outside P. P is normal in its normalizer, so the
/// extension stays a p-group.
pub fn find_sylow(g: &PermGroup, p: u64, caps: &Caps) -> Result<PermGroup, SylowError> {
    if !is_prime(p) {
        return Err(SylowError::NotPrime(p));
    }
    let order = g.order();
    let target = filters::p_part(order, p);
    if target == 1 {
        return Ok(PermGroup::trivial(g.degree()));
    }
    let elems = g.elements_arc(caps.elements).map_err(SylowError::Group)?;
    let seed = elems
        .iter()
        .find(|e| e.order() % p == 0)
        .expect("p divides the group order, so a p-element exists");
    let mut rest = seed.order();
    while rest % p == 0 {
        rest /= p;
    }
    let x = seed.pow(rest);
    let mut sylow = PermGroup::new(g.degree(), vec![x]).map_err(SylowError::Group)?;
    while sylow.order() < target {
        let normalizer = g.normalizer_of(&sylow, caps).map_err(SylowError::Group)?;
        let n_elems = normalizer
            .elements_arc(caps.elements)
            .map_err(SylowError::Group)?;
        let extension = n_elems
            .iter()
            .find(|e| {
                let o = e.order();
                o > 1 && filters::prime_power(o).map(|(q, _)| q) == Some(p) && !sylow.contains(e)
            })
            .expect("the normalizer of a non-Sylow p-subgroup contains a new p-element");
        let mut gens = sylow.generators().to_vec();
        gens.push(extension.clone());
        sylow = PermGroup::new(g.degree(), gens).map_err(SylowError::Group)?;
    }
    Ok(sylow)
}

/// The conjugation orbit of `sylow` in `g` as canonical element-set keys, in
/// BFS discovery order.
fn sylow_orbit(
    g: &PermGroup,
    sylow: &PermGroup,
    caps: &Caps,
) -> Result<Vec<Vec<Permutation>>, SylowError> {
    let elems = sylow
        .elements_arc(caps.elements)
        .map_err(SylowError::Group)?;
    let seed = subgroup_key(&elems);
    let mut seen: HashSet<Vec<Permutation>> = HashSet::new();
    seen.insert(seed.clone());
    let mut orbit = vec![seed];
    let mut head = 0;
    while head < orbit.len() {
        let key = orbit[head].clone();
        head += 1;
        for s in g.generators() {
            let conj = conjugate_key(&key, s);
            if !seen.contains(&conj) {
                if orbit.len() >= caps.orbit {
                    return Err(SylowError::Group(GroupError::OrbitCapExceeded {
                        cap: caps.orbit,
                        required: None,
                    }));
                }
                seen.insert(conj.clone());
                orbit.push(conj);
            }
        }
    }
    Ok(orbit)
}

/// Sylow count alone, via the index of the normalizer.
fn sylow_count_only(g: &PermGroup, p: u64, caps: &Caps) -> Result<u64, SylowError> {
    let sylow = find_sylow(g, p, caps)?;
    let normalizer = g.normalizer_of(&sylow, caps).map_err(SylowError::Group)?;
    Ok(g.order() / normalizer.order())
}

pub struct PCoreKernel {
    pub p_core: PermGroup,
    pub kernel: PermGroup,
    pub quotient_count: u64,
}

/// p-core (intersection of all Sylow p-subgroups), the kernel of the
/// conjugation action on Syl_p, and the Sylow count of the action image.
///
/// The count of the image is recomputed from scratch and compared against
/// the count in `g`; the two must agree because reduction modulo the kernel
/// is a bijection on Sylow p-subgroups. That bijection is verified here, not
/// assumed.
pub fn p_core_and_kernel(g: &PermGroup, p: u64, caps: &Caps) -> Result<PCoreKernel, SylowError> {
    let report = sylow_details(g, p, caps)?;
    Ok(PCoreKernel {
        p_core: report.p_core,
        kernel: report.kernel,
        quotient_count: report.quotient_count,
    })
}

pub(crate) struct SylowDetails {
    pub report: SylowReport,
    pub p_core: PermGroup,
    pub kernel: PermGroup,
    pub quotient_count: u64,
}

pub(crate) fn sylow_details(
    g: &PermGroup,
    p: u64,
    caps: &Caps,
) -> Result<SylowDetails, SylowError> {
    if !is_prime(p) {
        return Err(SylowError::NotPrime(p));
    }
    let order = g.order();
    let sylow = find_sylow(g, p, caps)?;
    let normalizer = g.normalizer_of(&sylow, caps).map_err(SylowError::Group)?;
    let count = order / normalizer.order();

    let orbit = sylow_orbit(g, &sylow, caps)?;
    if orbit.len() as u64 != count {
        return Err(SylowError::Group(GroupError::EngineInvariant(format!(
            "conjugate orbit has {} members but the normalizer index is {count}",
            orbit.len()
        ))));
    }

    // p-core: intersect the element sets over the whole orbit.
    let mut core_elems: Vec<Permutation> = orbit[0].clone();
    for conj in &orbit[1..] {
        let set: HashSet<&Permutation> = conj.iter().collect();
        core_elems.retain(|e| set.contains(e));
        if core_elems.len() == 1 {
            break;
        }
    }
    let p_core = PermGroup::from_elements(g.degree(), core_elems);

    let action = g.coset_action(&normalizer, caps).map_err(SylowError::Group)?;
    let kernel = action.kernel;
    let quotient_count = if count == 1 {
        // Degree-1 action: the image is trivial and has one (trivial) Sylow.
        1
    } else {
        sylow_count_only(&action.image, p, caps)?
    };
    if quotient_count != count {
        return Err(SylowError::Group(GroupError::EngineInvariant(format!(
            "image of the conjugation action has {quotient_count} Sylow {p}-subgroups, expected {count}"
        ))));
    }
    if kernel.order() % p_core.order() != 0 || !p_core.is_subgroup_of(&kernel) {
        return Err(SylowError::Group(GroupError::EngineInvariant(
            "the p-core is not contained in the action kernel".into(),
        )));
    }

    let report = SylowReport {
        p,
        sylow_order: sylow.order(),
        count,
        normalizer_order: normalizer.order(),
        p_core_order: p_core.order(),
        action_kernel_order: kernel.order(),
    };
    Ok(SylowDetails {
        report,
        p_core,
        kernel,
        quotient_count,
    })
}

/// Full Sylow report for (g, p): count, normalizer order, p-core order and
/// conjugation-action kernel order, with the conjugate-orbit cross-check.
pub fn count_sylow(g: &PermGroup, p: u64, caps: &Caps) -> Result<SylowReport, SylowError> {
    Ok(sylow_details(g, p, caps)?.report)
}

/// Outcome of the minimal-intersection search over Sylow pairs.
#[derive(Debug, Clone)]
pub enum BrodkeyOutcome {
    /// Sylow p-subgroups are abelian; the pair realizes `P ∩ Q = O_p(G)`.
    Pair {
        first: PermGroup,
        second: PermGroup,
        intersection_order: u64,
    },
    NotAbelianSylow,
}

/// For abelian Sylow p-subgroups, finds a pair (P, Q) whose intersection is
/// the p-core, by minimizing |P ∩ Q| over the conjugate orbit.
pub fn brodkey_pair(g: &PermGroup, p: u64, caps: &Caps) -> Result<BrodkeyOutcome, SylowError> {
    let sylow = find_sylow(g, p, caps)?;
    let elems = sylow
        .elements_arc(caps.elements)
        .map_err(SylowError::Group)?;
    let is_abelian = elems
        .iter()
        .enumerate()
        .all(|(i, a)| elems[i + 1..].iter().all(|b| a.mul(b) == b.mul(a)));
    if !is_abelian {
        return Ok(BrodkeyOutcome::NotAbelianSylow);
    }
    let orbit = sylow_orbit(g, &sylow, caps)?;
    let base: HashSet<&Permutation> = orbit[0].iter().collect();
    let mut best: Option<(usize, usize)> = None; // (intersection size, orbit index)
    for (i, conj) in orbit.iter().enumerate() {
        let inter = conj.iter().filter(|e| base.contains(*e)).count();
        if best.map(|(sz, _)| inter < sz).unwrap_or(true) {
            best = Some((inter, i));
        }
    }
    let (intersection, idx) = best.expect("orbit is nonempty");
    let second = PermGroup::from_elements(g.degree(), orbit[idx].clone());
    // Brodkey's argument guarantees the minimum meets the p-core exactly.
    let core_order = sylow_details(g, p, caps)?.p_core.order();
    if intersection as u64 != core_order {
        return Err(SylowError::Group(GroupError::EngineInvariant(format!(
            "minimal Sylow intersection {intersection} differs from the p-core order {core_order}"
        ))));
    }
    Ok(BrodkeyOutcome::Pair {
        first: PermGroup::from_elements(g.degree(), orbit[0].clone()),
        second,
        intersection_order: intersection as u64,
    })
}

/// Result of centralizing a product of two disjoint p-cycles in the
/// alternating and symmetric groups of degree 2p.
#[derive(Debug, Clone)]
pub struct DoubleCycleCentralizer {
    pub p: u64,
    pub alternating_order: u64,
    pub symmetric_order: u64,
    /// Whether the alternating centralizer has order exactly p^2.
    pub pass: bool,
    pub alternating_path: EnginePath,
    pub symmetric_path: EnginePath,
}

fn factorial_u128(n: u64) -> u128 {
    (2..=n as u128).product()
}

/// Computes |C(σ)| for σ = (1..p)(p+1..2p) inside A_2p and S_2p.
///
/// The conjugacy class of σ has (2p)!/(2·p^2) members in A_2p, so the orbit
/// route is refused up front (with the required size) when it cannot fit
/// under the cap; p in {3, 5} fits the default caps.
pub fn double_cycle_centralizer(p: u64, caps: &Caps) -> Result<DoubleCycleCentralizer, SylowError> {
    if !is_prime(p) {
        return Err(SylowError::NotPrime(p));
    }
    assert!(p % 2 == 1, "the double-cycle computation needs an odd prime");
    let degree = (2 * p) as usize;
    let mut images: Vec<usize> = Vec::with_capacity(degree);
    for i in 0..degree {
        let block = i / p as usize;
        let offset = (i % p as usize + 1) % p as usize;
        images.push(block * p as usize + offset);
    }
    let sigma = Permutation::from_images(images).expect("two disjoint cycles");
    debug_assert_eq!(sigma.parity(), Parity::Even);

    let class_size_sym = factorial_u128(2 * p) / (2 * p as u128 * p as u128);
    // The class does not split in A_2p (the S-centralizer contains odd
    // elements), so the A-class has the same size.
    let sym_order = factorial_u128(2 * p);
    let brute_feasible = sym_order / 2 <= caps.elements as u128;
    if !brute_feasible && class_size_sym > caps.orbit as u128 {
        return Err(SylowError::Group(GroupError::OrbitCapExceeded {
            cap: caps.orbit,
            required: Some(class_size_sym),
        }));
    }

    let alternating = crate::families::alternating(degree).expect("degree >= 6");
    let symmetric = crate::families::symmetric(degree).expect("degree >= 6");
    let (c_alt, alternating_path) = alternating
        .centralizer_with_path(&sigma, caps)
        .map_err(SylowError::Group)?;
    let (c_sym, symmetric_path) = symmetric
        .centralizer_with_path(&sigma, caps)
        .map_err(SylowError::Group)?;
    let alternating_order = c_alt.order();
    Ok(DoubleCycleCentralizer {
        p,
        alternating_order,
        symmetric_order: c_sym.order(),
        pass: alternating_order == p * p,
        alternating_path,
        symmetric_path,
    })
}

/// N/C quotient data for a Sylow subgroup of prime order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NcReport {
    pub p: u64,
    pub normalizer_order: u64,
    pub centralizer_order: u64,
    pub nc_order: u64,
    pub is_cyclic: bool,
    pub divides_p_minus_1: bool,
}

/// For |Syl_p| = p: computes N = N_G(P), C = C_G(P) and decides whether N/C
/// is cyclic of order dividing p-1 on the coset-action image of N on C.
pub fn nc_quotient(g: &PermGroup, p: u64, caps: &Caps) -> Result<NcReport, SylowError> {
    let sylow = find_sylow(g, p, caps)?;
    if sylow.order() != p {
        return Err(SylowError::SylowNotPrimeOrder {
            p,
            order: sylow.order(),
        });
    }
    let normalizer = g.normalizer_of(&sylow, caps).map_err(SylowError::Group)?;
    let centralizer = g
        .centralizer_of_subgroup(&sylow, caps)
        .map_err(SylowError::Group)?;
    let nc_order = normalizer.order() / centralizer.order();
    let action = normalizer
        .coset_action(&centralizer, caps)
        .map_err(SylowError::Group)?;
    if action.image.order() != nc_order {
        return Err(SylowError::Group(GroupError::EngineInvariant(
            "the centralizer is not the kernel of the normalizer's coset action".into(),
        )));
    }
    let image_elems = action
        .image
        .elements_arc(caps.elements)
        .map_err(SylowError::Group)?;
    let is_cyclic = nc_order == 1 || image_elems.iter().any(|e| e.order() == nc_order);
    Ok(NcReport {
        p,
        normalizer_order: normalizer.order(),
        centralizer_order: centralizer.order(),
        nc_order,
        is_cyclic,
        divides_p_minus_1: (p - 1) % nc_order == 0,
    })
}

#[derive(Debug, Clone)]
pub enum Sylow2Complement {
    /// The unique normal subgroup with index equal to the Sylow 2-order.
    Complement(PermGroup),
    NotCyclicSylow2,
}

/// For a cyclic Sylow 2-subgroup, constructs the normal complement by the
/// parity recursion: embed the group in its regular action by left
/// multiplication, keep the elements that act evenly, and recurse on that
/// index-2 kernel until the 2-part is exhausted. Normality and the index are
/// verified before returning.
pub fn cyclic_sylow2_complement(
    g: &PermGroup,
    caps: &Caps,
) -> Result<Sylow2Complement, SylowError> {
    let order = g.order();
    if order > caps.regular {
        return Err(SylowError::Group(GroupError::CapExceeded {
            cap: caps.regular as usize,
            found: order as usize,
        }));
    }
    let sylow = find_sylow(g, 2, caps)?;
    let two_part = sylow.order();
    if two_part > 1 && !sylow.is_cyclic(caps).map_err(SylowError::Group)? {
        return Ok(Sylow2Complement::NotCyclicSylow2);
    }

    let mut current = g.clone();
    let mut remaining = two_part;
    while remaining > 1 {
        let elems = current
            .elements_arc(caps.elements)
            .map_err(SylowError::Group)?;
        let index_of: HashMap<&Permutation, usize> =
            elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
        // Parity of a generator in the regular action by left multiplication.
        let regular_parity = |gen: &Permutation| -> Parity {
            let images: Vec<usize> = elems
                .iter()
                .map(|e| index_of[&gen.mul(e)])
                .collect();
            Permutation::from_images(images)
                .expect("left multiplication permutes the elements")
                .parity()
        };
        let parities: Vec<Parity> = current.generators().iter().map(regular_parity).collect();
        let odd_gen = current
            .generators()
            .iter()
            .zip(&parities)
            .find(|(_, parity)| **parity == Parity::Odd)
            .map(|(gen, _)| gen.clone());
        let t = match odd_gen {
            Some(t) => t,
            None => {
                return Err(SylowError::Group(GroupError::EngineInvariant(
                    "a group with a nontrivial cyclic Sylow 2-subgroup must have an odd generator"
                        .into(),
                )))
            }
        };
        // Schreier generators of the even-acting kernel for the transversal
        // {1, t}.
        let t_inv = t.inverse();
        let mut kernel_gens: Vec<Permutation> = Vec::new();
        for (gen, parity) in current.generators().iter().zip(&parities) {
            match parity {
                Parity::Even => {
                    kernel_gens.push(gen.clone());
                    kernel_gens.push(t.mul(&gen.mul(&t_inv)));
                }
                Parity::Odd => {
                    kernel_gens.push(gen.mul(&t_inv));
                    kernel_gens.push(t.mul(gen));
                }
            }
        }
        kernel_gens.sort();
        kernel_gens.dedup();
        let next = PermGroup::new(g.degree(), kernel_gens).map_err(SylowError::Group)?;
        if next.order() * 2 != current.order() {
            return Err(SylowError::Group(GroupError::EngineInvariant(
                "the even-acting kernel does not have index 2".into(),
            )));
        }
        current = next;
        remaining /= 2;
    }

    if current.order() * two_part != order {
        return Err(SylowError::Group(GroupError::EngineInvariant(
            "normal complement has the wrong index".into(),
        )));
    }
    for s in g.generators() {
        let s_inv = s.inverse();
        for h in current.generators() {
            if !current.contains(&s.mul(&h.mul(&s_inv))) {
                return Err(SylowError::Group(GroupError::EngineInvariant(
                    "normal complement is not conjugation-closed".into(),
                )));
            }
        }
    }
    Ok(Sylow2Complement::Complement(current))
}

/// Count of subgroups of order p^a with its congruence data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusRow {
    pub a: u32,
    pub subgroup_order: u64,
    pub count: u64,
    pub congruent_mod_p: bool,
    /// Residue class mod p^2, present exactly when p^(a+1) divides |G|.
    pub class_mod_p_squared: Option<filters::FrobeniusClass>,
}

/// For each a >= 1 with p^a dividing |G|: the number of subgroups of order
/// p^a, whether it is congruent to 1 mod p, and (when p^(a+1) also divides
/// |G|) its residue class mod p^2.
pub fn frobenius_counts(
    g: &PermGroup,
    p: u64,
    caps: &Caps,
) -> Result<Vec<FrobeniusRow>, SylowError> {
    if !is_prime(p) {
        return Err(SylowError::NotPrime(p));
    }
    let vmax = filters::valuation(g.order(), p);
    let mut rows = Vec::new();
    for a in 1..=vmax {
        let m = p.pow(a);
        let subs = g.subgroups_of_order(m, caps).map_err(SylowError::Group)?;
        let count = subs.len() as u64;
        rows.push(FrobeniusRow {
            a,
            subgroup_order: m,
            count,
            congruent_mod_p: count % p == 1,
            class_mod_p_squared: (a < vmax).then(|| filters::frobenius_pseudo_filter(count, p)),
        });
    }
    Ok(rows)
}
