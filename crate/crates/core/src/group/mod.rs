//! Finite permutation groups given by generators: element enumeration,
//! stabilizer-chain order and membership, orbits and stabilizers,
//! centralizers, normalizers, coset actions with kernels, and small-scale
//! subgroup enumeration.

mod chain;

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::caps::Caps;
use crate::perm::{PermError, Permutation};

pub(crate) use chain::StabilizerChain;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("element enumeration exceeded cap {cap} (at least {found} elements)")]
    CapExceeded { cap: usize, found: usize },
    #[error("conjugation orbit exceeded cap {cap}{}", required.map(|r| format!(" (requires {r})")).unwrap_or_default())]
    OrbitCapExceeded { cap: usize, required: Option<u128> },
    #[error("coset action index {index} exceeds degree cap {cap}")]
    IndexCapExceeded { cap: usize, index: u64 },
    #[error("the given group is not a subgroup")]
    NotASubgroup,
    #[error("{m} does not divide the group order {order}")]
    NonDivisorOrder { order: u64, m: u64 },
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("engine invariant violated: {0}")]
    EngineInvariant(String),
}

/// Which computation route an operation took.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnginePath {
    BruteForce,
    OrbitStabilizer,
}

impl fmt::Display for EnginePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnginePath::BruteForce => write!(f, "brute-force"),
            EnginePath::OrbitStabilizer => write!(f, "orbit-stabilizer"),
        }
    }
}

/// A finite permutation group on `{0..degree-1}` given by generators.
///
/// The stabilizer chain and (for small groups) the element list are memoized;
/// both builds are deterministic, so concurrent initialization races only
/// duplicate work.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabilizerChain>,
    elements: OnceLock<Arc<Vec<Permutation>>>,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermGroup(degree {}, {} gens)", self.degree, self.generators.len())
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<PermGroup, GroupError> {
        for g in &generators {
            if g.degree() != degree {
                return Err(GroupError::Perm(PermError::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                }));
            }
        }
        let generators: Vec<Permutation> =
            generators.into_iter().filter(|g| !g.is_identity()).collect();
        Ok(PermGroup {
            degree,
            generators,
            chain: OnceLock::new(),
            elements: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::new(degree, Vec::new()).expect("trivial group is always valid")
    }

    /// Builds a group from its full (deduplicated) element list, selecting a
    /// small generating set greedily. The element list is kept as the
    /// memoized enumeration.
    pub(crate) fn from_elements(degree: usize, mut elements: Vec<Permutation>) -> PermGroup {
        elements.sort();
        elements.dedup();
        let mut gens: Vec<Permutation> = Vec::new();
        let mut chain = StabilizerChain::build(degree, &gens, &[]);
        for e in &elements {
            if !e.is_identity() && !chain.contains(e) {
                gens.push(e.clone());
                chain = StabilizerChain::build(degree, &gens, &[]);
            }
        }
        let group = PermGroup {
            degree,
            generators: gens,
            chain: OnceLock::new(),
            elements: OnceLock::new(),
        };
        let _ = group.chain.set(chain);
        let _ = group.elements.set(Arc::new(elements));
        group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    fn chain(&self) -> &StabilizerChain {
        self.chain
            .get_or_init(|| StabilizerChain::build(self.degree, &self.generators, &[]))
    }

    /// Exact group order via the stabilizer chain.
    pub fn order(&self) -> u64 {
        self.chain().order()
    }

    /// Stabilizer-chain membership test.
    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.chain().contains(g)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    /// Set equality of two groups on the same domain.
    pub fn same_group_as(&self, other: &PermGroup) -> bool {
        self.degree == other.degree
            && self.order() == other.order()
            && self.is_subgroup_of(other)
    }

    pub fn is_abelian(&self) -> bool {
        for (i, a) in self.generators.iter().enumerate() {
            for b in &self.generators[i + 1..] {
                if a.mul(b) != b.mul(a) {
                    return false;
                }
            }
        }
        true
    }

    /// Whether the group is cyclic; enumerates elements, so only suitable
    /// under the element cap.
    pub fn is_cyclic(&self, caps: &Caps) -> Result<bool, GroupError> {
        let order = self.order();
        if order == 1 {
            return Ok(true);
        }
        let elems = self.elements_arc(caps.elements)?;
        Ok(elems.iter().any(|e| e.order() == order))
    }

    /// Full closure of the generators, in lexicographic image-table order.
    /// This is a brute-force oracle independent of the stabilizer chain.
    pub fn enumerate_elements(&self, cap: usize) -> Result<Vec<Permutation>, GroupError> {
        Ok(self.elements_arc(cap)?.as_ref().clone())
    }

    pub(crate) fn elements_arc(&self, cap: usize) -> Result<Arc<Vec<Permutation>>, GroupError> {
        if let Some(arc) = self.elements.get() {
            if arc.len() <= cap {
                return Ok(arc.clone());
            }
            return Err(GroupError::CapExceeded { cap, found: arc.len() });
        }
        let elems = closure_with_cap(self.degree, &self.generators, cap)
            .map_err(|found| GroupError::CapExceeded { cap, found })?;
        let arc = Arc::new(elems);
        let _ = self.elements.set(arc.clone());
        Ok(arc)
    }

    /// Orbit of a point, sorted ascending.
    pub fn orbit(&self, point: usize) -> Vec<usize> {
        assert!(point < self.degree, "point out of range");
        let (mut orbit, _) = self.orbit_with_transversal(point);
        orbit.sort_unstable();
        orbit
    }

    fn orbit_with_transversal(&self, point: usize) -> (Vec<usize>, HashMap<usize, Permutation>) {
        let mut transversal: HashMap<usize, Permutation> = HashMap::new();
        transversal.insert(point, Permutation::identity(self.degree));
        let mut orbit = vec![point];
        let mut head = 0;
        while head < orbit.len() {
            let pt = orbit[head];
            head += 1;
            for s in &self.generators {
                let q = s.image(pt);
                if !transversal.contains_key(&q) {
                    let rep = s.mul(&transversal[&pt]);
                    transversal.insert(q, rep);
                    orbit.push(q);
                }
            }
        }
        (orbit, transversal)
    }

    /// Orbit of a point together with its stabilizer, satisfying
    /// `|orbit| * |stabilizer| = |G|`.
    pub fn orbit_and_stabilizer(&self, point: usize) -> (Vec<usize>, PermGroup) {
        assert!(point < self.degree, "point out of range");
        let (orbit, transversal) = self.orbit_with_transversal(point);
        let mut stab_gens: Vec<Permutation> = Vec::new();
        let mut seen: HashSet<Permutation> = HashSet::new();
        for &pt in &orbit {
            let u = &transversal[&pt];
            for s in &self.generators {
                let target = s.image(pt);
                let schreier = transversal[&target].inverse().mul(&s.mul(u));
                if !schreier.is_identity() && seen.insert(schreier.clone()) {
                    stab_gens.push(schreier);
                }
            }
        }
        let stabilizer = PermGroup::new(self.degree, stab_gens).expect("same degree");
        debug_assert_eq!(
            orbit.len() as u64 * stabilizer.order(),
            self.order(),
            "orbit-stabilizer product mismatch"
        );
        let mut sorted = orbit;
        sorted.sort_unstable();
        (sorted, stabilizer)
    }

    /// Centralizer of a single element, choosing brute force under the
    /// element cap and the conjugation orbit-stabilizer route above it.
    pub fn centralizer_of(&self, s: &Permutation, caps: &Caps) -> Result<PermGroup, GroupError> {
        Ok(self.centralizer_with_path(s, caps)?.0)
    }

    pub fn centralizer_with_path(
        &self,
        s: &Permutation,
        caps: &Caps,
    ) -> Result<(PermGroup, EnginePath), GroupError> {
        if s.degree() != self.degree {
            return Err(GroupError::Perm(PermError::DegreeMismatch {
                left: self.degree,
                right: s.degree(),
            }));
        }
        if self.order() <= caps.elements as u64 {
            let elems = self.elements_arc(caps.elements)?;
            let centralizing: Vec<Permutation> = elems
                .iter()
                .filter(|g| g.mul(s) == s.mul(g))
                .cloned()
                .collect();
            return Ok((
                PermGroup::from_elements(self.degree, centralizing),
                EnginePath::BruteForce,
            ));
        }
        // Conjugation orbit of s with Schreier generators for the stabilizer.
        let mut transversal: HashMap<Permutation, Permutation> = HashMap::new();
        transversal.insert(s.clone(), Permutation::identity(self.degree));
        let mut orbit: Vec<Permutation> = vec![s.clone()];
        let mut head = 0;
        let mut stab_gens: Vec<Permutation> = Vec::new();
        let mut seen: HashSet<Permutation> = HashSet::new();
        while head < orbit.len() {
            let x = orbit[head].clone();
            head += 1;
            let t = transversal[&x].clone();
            for g in &self.generators {
                let y = x.conjugate_by(g);
                match transversal.get(&y) {
                    None => {
                        if orbit.len() >= caps.orbit {
                            return Err(GroupError::OrbitCapExceeded {
                                cap: caps.orbit,
                                required: None,
                            });
                        }
                        transversal.insert(y.clone(), g.mul(&t));
                        orbit.push(y);
                    }
                    Some(ty) => {
                        let schreier = ty.inverse().mul(&g.mul(&t));
                        if !schreier.is_identity() && seen.insert(schreier.clone()) {
                            stab_gens.push(schreier);
                        }
                    }
                }
            }
        }
        let centralizer = PermGroup::new(self.degree, stab_gens)?;
        debug_assert_eq!(orbit.len() as u64 * centralizer.order(), self.order());
        Ok((centralizer, EnginePath::OrbitStabilizer))
    }

    /// Centralizer of a whole subgroup, as the intersection of the
    /// centralizers of its generators.
    pub fn centralizer_of_subgroup(
        &self,
        h: &PermGroup,
        caps: &Caps,
    ) -> Result<PermGroup, GroupError> {
        if self.order() <= caps.elements as u64 {
            let elems = self.elements_arc(caps.elements)?;
            let centralizing: Vec<Permutation> = elems
                .iter()
                .filter(|g| h.generators.iter().all(|x| g.mul(x) == x.mul(g)))
                .cloned()
                .collect();
            return Ok(PermGroup::from_elements(self.degree, centralizing));
        }
        let mut current = self.clone();
        for x in &h.generators {
            current = current.centralizer_of(x, caps)?;
        }
        Ok(current)
    }

    /// Normalizer of a subgroup: brute force under the element cap, else the
    /// stabilizer of `h` under conjugation on its conjugate orbit.
    pub fn normalizer_of(&self, h: &PermGroup, caps: &Caps) -> Result<PermGroup, GroupError> {
        Ok(self.normalizer_with_path(h, caps)?.0)
    }

    pub fn normalizer_with_path(
        &self,
        h: &PermGroup,
        caps: &Caps,
    ) -> Result<(PermGroup, EnginePath), GroupError> {
        if !h.is_subgroup_of(self) {
            return Err(GroupError::NotASubgroup);
        }
        if self.order() <= caps.elements as u64 {
            let elems = self.elements_arc(caps.elements)?;
            let normalizing: Vec<Permutation> = elems
                .iter()
                .filter(|g| {
                    let g_inv = g.inverse();
                    h.generators
                        .iter()
                        .all(|x| h.contains(&g.mul(&x.mul(&g_inv))))
                })
                .cloned()
                .collect();
            return Ok((
                PermGroup::from_elements(self.degree, normalizing),
                EnginePath::BruteForce,
            ));
        }
        let h_elems = h.elements_arc(caps.elements)?;
        let seed = subgroup_key(&h_elems);
        let mut transversal: HashMap<Vec<Permutation>, Permutation> = HashMap::new();
        transversal.insert(seed.clone(), Permutation::identity(self.degree));
        let mut orbit = vec![seed];
        let mut head = 0;
        let mut stab_gens: Vec<Permutation> = Vec::new();
        let mut seen: HashSet<Permutation> = HashSet::new();
        while head < orbit.len() {
            let key = orbit[head].clone();
            head += 1;
            let t = transversal[&key].clone();
            for g in &self.generators {
                let conj = conjugate_key(&key, g);
                match transversal.get(&conj) {
                    None => {
                        if orbit.len() >= caps.orbit {
                            return Err(GroupError::OrbitCapExceeded {
                                cap: caps.orbit,
                                required: None,
                            });
                        }
                        transversal.insert(conj.clone(), g.mul(&t));
                        orbit.push(conj);
                    }
                    Some(ty) => {
                        let schreier = ty.inverse().mul(&g.mul(&t));
                        if !schreier.is_identity() && seen.insert(schreier.clone()) {
                            stab_gens.push(schreier);
                        }
                    }
                }
            }
        }
        let normalizer = PermGroup::new(self.degree, stab_gens)?;
        debug_assert_eq!(orbit.len() as u64 * normalizer.order(), self.order());
        Ok((normalizer, EnginePath::OrbitStabilizer))
    }

    /// Conjugate subgroup `g * self * g^-1`.
    pub fn conjugated_by(&self, g: &Permutation) -> PermGroup {
        let gens = self
            .generators
            .iter()
            .map(|x| x.conjugate_by(g))
            .collect();
        PermGroup::new(self.degree, gens).expect("conjugation preserves degree")
    }

    /// Action of the group on the left cosets of `h`, with its kernel (the
    /// largest normal subgroup of the group inside `h`).
    pub fn coset_action(&self, h: &PermGroup, caps: &Caps) -> Result<ActionImage, GroupError> {
        if !h.is_subgroup_of(self) {
            return Err(GroupError::NotASubgroup);
        }
        let g_order = self.order();
        let h_order = h.order();
        let index = g_order / h_order;
        if index > caps.coset_degree as u64 {
            return Err(GroupError::IndexCapExceeded {
                cap: caps.coset_degree,
                index,
            });
        }
        let index = index as usize;
        let h_elems = h.elements_arc(caps.elements)?;

        // Each coset gH is keyed by its lexicographically minimal element.
        let min_of_coset = |t: &Permutation| -> Permutation {
            h_elems
                .iter()
                .map(|x| t.mul(x))
                .min()
                .expect("subgroup is never empty")
        };

        let identity_key = min_of_coset(&Permutation::identity(self.degree));
        let mut key_to_idx: HashMap<Permutation, usize> = HashMap::new();
        key_to_idx.insert(identity_key.clone(), 0);
        let mut reps = vec![identity_key];
        let mut images: Vec<Vec<usize>> = vec![vec![usize::MAX; index]; self.generators.len()];
        let mut head = 0;
        while head < reps.len() {
            let rep = reps[head].clone();
            for (gi, s) in self.generators.iter().enumerate() {
                let key = min_of_coset(&s.mul(&rep));
                let j = match key_to_idx.get(&key) {
                    Some(&j) => j,
                    None => {
                        let j = reps.len();
                        if j >= index {
                            return Err(GroupError::EngineInvariant(
                                "coset enumeration exceeded the group index".into(),
                            ));
                        }
                        key_to_idx.insert(key.clone(), j);
                        reps.push(key);
                        j
                    }
                };
                images[gi][head] = j;
            }
            head += 1;
        }
        if reps.len() != index {
            return Err(GroupError::EngineInvariant(format!(
                "coset enumeration found {} cosets, expected {index}",
                reps.len()
            )));
        }

        let image_gens: Vec<Permutation> = images
            .into_iter()
            .map(|imgs| Permutation::from_images(imgs).expect("group action is a bijection"))
            .collect();
        let image = PermGroup::new(index.max(1), image_gens.clone())?;

        // Kernel: the pointwise stabilizer of the coset block in the graph of
        // the action homomorphism, read off a chain whose base starts with
        // every coset point.
        let graph_degree = self.degree + index;
        let graph_gens: Vec<Permutation> = self
            .generators
            .iter()
            .zip(&image_gens)
            .map(|(s, a)| {
                let mut imgs: Vec<usize> = s.images().to_vec();
                imgs.extend(a.images().iter().map(|&x| x + self.degree));
                Permutation::from_images(imgs).expect("block-diagonal bijection")
            })
            .collect();
        let forced: Vec<usize> = (self.degree..graph_degree).collect();
        let graph_chain = StabilizerChain::build(graph_degree, &graph_gens, &forced);
        if graph_chain.order() != g_order {
            return Err(GroupError::EngineInvariant(
                "graph group order differs from the source group order".into(),
            ));
        }
        let kernel_order = graph_chain.order_from_level(index);
        let kernel_gens: Vec<Permutation> = graph_chain
            .strong_generators_from_level(index)
            .into_iter()
            .map(|g| {
                Permutation::from_images(g.images()[..self.degree].to_vec())
                    .expect("restriction of a block permutation")
            })
            .collect();
        let kernel = PermGroup::new(self.degree, kernel_gens)?;
        if kernel.order() != kernel_order || image.order() * kernel_order != g_order {
            return Err(GroupError::EngineInvariant(
                "first isomorphism theorem check failed for the coset action".into(),
            ));
        }

        let domain_labels = reps
            .iter()
            .map(|r| {
                let s = r.to_string();
                if s.is_empty() {
                    "()".to_string()
                } else {
                    s
                }
            })
            .collect();
        Ok(ActionImage {
            image,
            kernel,
            domain_labels,
        })
    }

    /// All subgroups of order `m`, complete whenever the group itself is
    /// enumerable: the search extends subgroups one generator at a time and
    /// every subgroup of order dividing `m` is reachable that way.
    pub fn subgroups_of_order(&self, m: u64, caps: &Caps) -> Result<Vec<PermGroup>, GroupError> {
        let order = self.order();
        if m == 0 || order % m != 0 {
            return Err(GroupError::NonDivisorOrder { order, m });
        }
        if order > caps.subgroup_elements {
            return Err(GroupError::CapExceeded {
                cap: caps.subgroup_elements as usize,
                found: order as usize,
            });
        }
        let identity = Permutation::identity(self.degree);
        if m == 1 {
            return Ok(vec![PermGroup::trivial(self.degree)]);
        }
        let elems = self.elements_arc(caps.elements)?;
        let candidates: Vec<&Permutation> = elems
            .iter()
            .filter(|e| {
                if e.is_identity() {
                    return false;
                }
                let o = e.order();
                m % o == 0
            })
            .collect();

        let mut visited: HashSet<Vec<Permutation>> = HashSet::new();
        let mut queue: VecDeque<Vec<Permutation>> = VecDeque::new();
        let seed = vec![identity.clone()];
        visited.insert(seed.clone());
        queue.push_back(seed);
        let mut found: Vec<Vec<Permutation>> = Vec::new();
        while let Some(sub) = queue.pop_front() {
            if sub.len() as u64 == m {
                found.push(sub);
                continue;
            }
            for &g in &candidates {
                if sub.binary_search(g).is_ok() {
                    continue;
                }
                let closed = match closure_of_set(&sub, g, m as usize) {
                    Some(c) => c,
                    None => continue,
                };
                if m % (closed.len() as u64) != 0 {
                    continue;
                }
                if visited.insert(closed.clone()) {
                    queue.push_back(closed);
                }
            }
        }
        found.sort();
        Ok(found
            .into_iter()
            .map(|elems| PermGroup::from_elements(self.degree, elems))
            .collect())
    }
}

/// Image of a coset (or point) action: the induced permutation group, the
/// kernel inside the source, and labels for the new points.
#[derive(Debug, Clone)]
pub struct ActionImage {
    pub image: PermGroup,
    pub kernel: PermGroup,
    pub domain_labels: Vec<String>,
}

/// Canonical key of a subgroup: its sorted element list.
pub(crate) fn subgroup_key(elems: &[Permutation]) -> Vec<Permutation> {
    let mut key = elems.to_vec();
    key.sort();
    key
}

pub(crate) fn conjugate_key(key: &[Permutation], g: &Permutation) -> Vec<Permutation> {
    let mut conj: Vec<Permutation> = key.iter().map(|x| x.conjugate_by(g)).collect();
    conj.sort();
    conj
}

/// Closure of `sub ∪ {extra}` as an element list, aborting with `None` once
/// the size exceeds `cap`. `sub` must be a sorted subgroup element list.
fn closure_of_set(sub: &[Permutation], extra: &Permutation, cap: usize) -> Option<Vec<Permutation>> {
    let degree = extra.degree();
    let mut gens: Vec<&Permutation> = sub.iter().filter(|e| !e.is_identity()).collect();
    gens.push(extra);
    let mut seen: HashSet<Permutation> = HashSet::new();
    let identity = Permutation::identity(degree);
    seen.insert(identity.clone());
    let mut list = vec![identity];
    let mut head = 0;
    while head < list.len() {
        let x = list[head].clone();
        head += 1;
        for g in &gens {
            let y = x.mul(g);
            if !seen.contains(&y) {
                if list.len() >= cap {
                    return None;
                }
                seen.insert(y.clone());
                list.push(y);
            }
        }
    }
    list.sort();
    Some(list)
}

/// BFS closure of the generators, failing once more than `cap` elements are
/// discovered. Returns the elements sorted lexicographically.
fn closure_with_cap(
    degree: usize,
    gens: &[Permutation],
    cap: usize,
) -> Result<Vec<Permutation>, usize> {
    let identity = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::new();
    seen.insert(identity.clone());
    let mut list = vec![identity];
    let mut head = 0;
    while head < list.len() {
        let x = list[head].clone();
        head += 1;
        for g in gens {
            let y = x.mul(g);
            if !seen.contains(&y) {
                if list.len() >= cap {
                    return Err(list.len() + 1);
                }
                seen.insert(y.clone());
                list.push(y);
            }
        }
    }
    list.sort();
    Ok(list)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::perm::parse_cycles;

    fn caps() -> Caps {
        Caps::default()
    }

    fn perm(spec: &str, degree: usize) -> Permutation {
        parse_cycles(spec, degree).unwrap()
    }

    fn group(degree: usize, specs: &[&str]) -> PermGroup {
        let gens = specs.iter().map(|s| perm(s, degree)).collect();
        PermGroup::new(degree, gens).unwrap()
    }

    #[test]
    fn enumerate_symmetric_4() {
        let s4 = families::symmetric(4).unwrap();
        let elems = s4.enumerate_elements(100_000).unwrap();
        assert_eq!(elems.len(), 24);
        // deterministic lexicographic order
        assert!(elems.windows(2).all(|w| w[0] < w[1]));
        assert!(elems[0].is_identity());
    }

    #[test]
    fn enumerate_empty_generators() {
        let trivial = PermGroup::trivial(5);
        let elems = trivial.enumerate_elements(10).unwrap();
        assert_eq!(elems, vec![Permutation::identity(5)]);
    }

    #[test]
    fn enumerate_alternating_6() {
        let a6 = families::alternating(6).unwrap();
        assert_eq!(a6.enumerate_elements(100_000).unwrap().len(), 360);
    }

    #[test]
    fn enumerate_cap_exceeded_carries_partial_count() {
        let s4 = families::symmetric(4).unwrap();
        match s4.enumerate_elements(10) {
            Err(GroupError::CapExceeded { cap: 10, found }) => assert!(found > 10),
            other => panic!("expected CapExceeded, got {other:?}"),
        }
    }

    #[test]
    fn order_of_dihedral_7() {
        assert_eq!(families::dihedral(7).unwrap().order(), 14);
    }

    #[test]
    fn order_of_alternating_17() {
        // 17!/2
        assert_eq!(families::alternating(17).unwrap().order(), 177_843_714_048_000);
    }

    #[test]
    fn order_of_dodecahedral_group() {
        assert_eq!(families::dodecahedral().order(), 120);
    }

    #[test]
    fn chain_order_matches_closure_size() {
        for g in [
            families::symmetric(5).unwrap(),
            families::alternating(5).unwrap(),
            families::dihedral(9).unwrap(),
            families::elementary_abelian(3, 2).unwrap(),
            families::dodecahedral(),
        ] {
            assert_eq!(g.order(), g.enumerate_elements(100_000).unwrap().len() as u64);
        }
    }

    #[test]
    fn generators_pass_membership() {
        let g = families::dodecahedral();
        for gen in g.generators() {
            assert!(g.contains(gen));
        }
        assert!(!g.contains(&perm("(1 2)", 7)));
    }

    #[test]
    fn orbit_stabilizer_on_symmetric_4() {
        let s4 = families::symmetric(4).unwrap();
        let (orbit, stab) = s4.orbit_and_stabilizer(0);
        assert_eq!(orbit, vec![0, 1, 2, 3]);
        // Brute-force oracle: elements fixing the point.
        let fixing: Vec<Permutation> = s4
            .enumerate_elements(1000)
            .unwrap()
            .into_iter()
            .filter(|e| e.image(0) == 0)
            .collect();
        assert_eq!(fixing.len(), 6);
        assert_eq!(stab.order(), 6);
        for e in &fixing {
            assert!(stab.contains(e));
        }
    }

    #[test]
    fn orbit_stabilizer_trivial_group() {
        let g = PermGroup::trivial(4);
        let (orbit, stab) = g.orbit_and_stabilizer(2);
        assert_eq!(orbit, vec![2]);
        assert_eq!(stab.order(), 1);
    }

    #[test]
    fn orbits_of_double_17_cycle_on_35_points() {
        let g = group(
            35,
            &["(1 2 3 4 5 6 7 8 9 10 11 12 13 14 15 16 17)\
               (18 19 20 21 22 23 24 25 26 27 28 29 30 31 32 33 34)"],
        );
        assert_eq!(g.orbit(34), vec![34]);
        assert_eq!(g.orbit(0).len(), 17);
        assert_eq!(g.orbit(17).len(), 17);
    }

    #[test]
    fn centralizer_in_symmetric_6() {
        let s6 = families::symmetric(6).unwrap();
        let sigma = perm("(1 2 3)(4 5 6)", 6);
        // Brute-force oracle computed here in the test.
        let oracle: Vec<Permutation> = s6
            .enumerate_elements(1000)
            .unwrap()
            .into_iter()
            .filter(|g| g.mul(&sigma) == sigma.mul(g))
            .collect();
        assert_eq!(oracle.len(), 18); // 2 * p^2 for p = 3

        let (c, path) = s6.centralizer_with_path(&sigma, &caps()).unwrap();
        assert_eq!(path, EnginePath::BruteForce);
        assert_eq!(c.order(), 18);

        // Force the orbit-stabilizer route and compare against the oracle.
        let small = Caps { elements: 10, ..Caps::default() };
        let (c2, path2) = s6.centralizer_with_path(&sigma, &small).unwrap();
        assert_eq!(path2, EnginePath::OrbitStabilizer);
        assert_eq!(c2.order(), 18);
        for e in &oracle {
            assert!(c2.contains(e));
        }
    }

    #[test]
    fn centralizer_in_alternating_6() {
        let a6 = families::alternating(6).unwrap();
        let sigma = perm("(1 2 3)(4 5 6)", 6);
        assert_eq!(a6.centralizer_of(&sigma, &caps()).unwrap().order(), 9);
    }

    #[test]
    fn centralizer_of_identity_is_whole_group() {
        let g = families::dihedral(5).unwrap();
        let c = g.centralizer_of(&Permutation::identity(5), &caps()).unwrap();
        assert!(c.same_group_as(&g));
    }

    #[test]
    fn orbit_cap_exceeded_reported() {
        let s6 = families::symmetric(6).unwrap();
        let sigma = perm("(1 2 3)(4 5 6)", 6);
        let tiny = Caps { elements: 10, orbit: 5, ..Caps::default() };
        assert!(matches!(
            s6.centralizer_with_path(&sigma, &tiny),
            Err(GroupError::OrbitCapExceeded { cap: 5, .. })
        ));
    }

    #[test]
    fn normalizer_of_cyclic_5_in_alternating_5() {
        let a5 = families::alternating(5).unwrap();
        let h = group(5, &["(1 2 3 4 5)"]);
        // Brute-force oracle over 60 elements.
        let oracle: Vec<Permutation> = a5
            .enumerate_elements(100)
            .unwrap()
            .into_iter()
            .filter(|g| {
                let gi = g.inverse();
                h.generators()
                    .iter()
                    .all(|x| h.contains(&g.mul(&x.mul(&gi))))
            })
            .collect();
        assert_eq!(oracle.len(), 10);

        let (n, path) = a5.normalizer_with_path(&h, &caps()).unwrap();
        assert_eq!(path, EnginePath::BruteForce);
        assert_eq!(n.order(), 10);

        let small = Caps { elements: 30, ..Caps::default() };
        let (n2, path2) = a5.normalizer_with_path(&h, &small).unwrap();
        assert_eq!(path2, EnginePath::OrbitStabilizer);
        assert_eq!(n2.order(), 10);
        for e in &oracle {
            assert!(n2.contains(e));
        }
    }

    #[test]
    fn normalizer_of_normal_subgroup_is_whole_group() {
        let s4 = families::symmetric(4).unwrap();
        let klein = group(4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        let n = s4.normalizer_of(&klein, &caps()).unwrap();
        assert!(n.same_group_as(&s4));
    }

    #[test]
    fn normalizer_of_reflection_in_symmetric_3() {
        let s3 = families::symmetric(3).unwrap();
        let h = group(3, &["(1 2)"]);
        assert_eq!(s3.normalizer_of(&h, &caps()).unwrap().order(), 2);
    }

    #[test]
    fn normalizer_rejects_non_subgroup() {
        let a4 = families::alternating(4).unwrap();
        let h = group(4, &["(1 2)"]);
        assert!(matches!(
            a4.normalizer_of(&h, &caps()),
            Err(GroupError::NotASubgroup)
        ));
    }

    #[test]
    fn coset_action_of_symmetric_3_on_reflection_cosets() {
        let s3 = families::symmetric(3).unwrap();
        let h = group(3, &["(1 2)"]);
        let action = s3.coset_action(&h, &caps()).unwrap();
        assert_eq!(action.image.degree(), 3);
        assert_eq!(action.image.order(), 6);
        assert_eq!(action.kernel.order(), 1);
        assert_eq!(action.domain_labels.len(), 3);
        // transitive image
        assert_eq!(action.image.orbit(0).len(), 3);
    }

    #[test]
    fn coset_action_on_itself_is_trivial() {
        let g = families::dihedral(5).unwrap();
        let action = g.coset_action(&g, &caps()).unwrap();
        assert_eq!(action.image.degree(), 1);
        assert_eq!(action.image.order(), 1);
        assert!(action.kernel.same_group_as(&g));
    }

    #[test]
    fn coset_action_of_cyclic_4_on_its_involution() {
        let c4 = group(4, &["(1 2 3 4)"]);
        let h = group(4, &["(1 3)(2 4)"]);
        let action = c4.coset_action(&h, &caps()).unwrap();
        assert_eq!(action.image.degree(), 2);
        assert_eq!(action.image.order(), 2);
        assert!(action.kernel.same_group_as(&h));
    }

    #[test]
    fn coset_action_satisfies_first_isomorphism_theorem() {
        let cases: Vec<(PermGroup, PermGroup)> = vec![
            (families::symmetric(4).unwrap(), group(4, &["(1 2)", "(1 2 3)"])),
            (families::alternating(5).unwrap(), group(5, &["(1 2 3)"])),
            (families::dihedral(6).unwrap(), group(6, &["(1 2 3 4 5 6)"])),
        ];
        for (g, h) in cases {
            let action = g.coset_action(&h, &caps()).unwrap();
            assert_eq!(action.image.order() * action.kernel.order(), g.order());
            // kernel is normal: closed under conjugation by the generators
            for s in g.generators() {
                let si = s.inverse();
                for k in action.kernel.generators() {
                    assert!(action.kernel.contains(&s.mul(&k.mul(&si))));
                }
            }
        }
    }

    #[test]
    fn coset_action_kernel_acts_trivially() {
        // Element-level oracle: k is in the kernel iff r^-1 k r lies in H
        // for every coset representative r, i.e. k fixes every coset. The
        // representatives are re-derived here by a plain BFS.
        let g = families::symmetric(4).unwrap();
        let h = group(4, &["(1 2)", "(3 4)"]);
        let action = g.coset_action(&h, &caps()).unwrap();
        assert_eq!(action.image.degree(), 6);

        let mut reps: Vec<Permutation> = vec![Permutation::identity(4)];
        let mut frontier = 0;
        while frontier < reps.len() {
            let r = reps[frontier].clone();
            frontier += 1;
            for s in g.generators() {
                let t = s.mul(&r);
                let known = reps.iter().any(|r2| h.contains(&r2.inverse().mul(&t)));
                if !known {
                    reps.push(t);
                }
            }
        }
        assert_eq!(reps.len(), 6);

        let kernel_elems = action.kernel.enumerate_elements(100).unwrap();
        for k in &kernel_elems {
            for r in &reps {
                let moved = r.inverse().mul(&k.mul(r));
                assert!(h.contains(&moved), "kernel element moves a coset");
            }
        }
        // and maximality: any element fixing every coset is in the kernel
        for e in g.enumerate_elements(100).unwrap() {
            let fixes_all = reps
                .iter()
                .all(|r| h.contains(&r.inverse().mul(&e.mul(r))));
            assert_eq!(fixes_all, action.kernel.contains(&e));
        }
    }

    #[test]
    fn regular_action_is_faithful_and_fixed_point_free() {
        for g in [families::dihedral(5).unwrap(), families::cyclic(6).unwrap()] {
            let trivial = PermGroup::trivial(g.degree());
            let action = g.coset_action(&trivial, &caps()).unwrap();
            assert_eq!(action.kernel.order(), 1);
            assert_eq!(action.image.order(), g.order());
            let elems = action.image.enumerate_elements(10_000).unwrap();
            for e in &elems {
                if !e.is_identity() {
                    assert!(
                        (0..e.degree()).all(|x| e.image(x) != x),
                        "nonidentity element of the regular action fixes a point"
                    );
                }
            }
        }
    }

    #[test]
    fn subgroups_of_order_in_cyclic_6() {
        let c6 = families::cyclic(6).unwrap();
        assert_eq!(c6.subgroups_of_order(2, &caps()).unwrap().len(), 1);
        assert_eq!(c6.subgroups_of_order(3, &caps()).unwrap().len(), 1);
        assert_eq!(c6.subgroups_of_order(6, &caps()).unwrap().len(), 1);
        assert_eq!(c6.subgroups_of_order(1, &caps()).unwrap().len(), 1);
    }

    #[test]
    fn subgroups_of_order_8_in_symmetric_4() {
        let s4 = families::symmetric(4).unwrap();
        let subs = s4.subgroups_of_order(8, &caps()).unwrap();
        assert_eq!(subs.len(), 3);
        // Independent route: the count of Sylow 2-subgroups equals the index
        // of the normalizer of any one of them.
        let n = s4.normalizer_of(&subs[0], &caps()).unwrap();
        assert_eq!(s4.order() / n.order(), 3);
        for s in &subs {
            assert_eq!(s.order(), 8);
            assert_eq!(s4.order() % s.order(), 0);
        }
    }

    #[test]
    fn subgroups_of_order_3_in_alternating_4() {
        let a4 = families::alternating(4).unwrap();
        let subs = a4.subgroups_of_order(3, &caps()).unwrap();
        assert_eq!(subs.len(), 4);
        let n = a4.normalizer_of(&subs[0], &caps()).unwrap();
        assert_eq!(a4.order() / n.order(), 4);
    }

    #[test]
    fn subgroups_of_order_rejects_non_divisor() {
        let c6 = families::cyclic(6).unwrap();
        assert!(matches!(
            c6.subgroups_of_order(4, &caps()),
            Err(GroupError::NonDivisorOrder { order: 6, m: 4 })
        ));
    }

    #[test]
    fn subgroup_search_is_deterministic() {
        let s4 = families::symmetric(4).unwrap();
        let a = s4.subgroups_of_order(4, &caps()).unwrap();
        let b = s4.subgroups_of_order(4, &caps()).unwrap();
        assert_eq!(a.len(), 7); // 3 cyclic and 4 Klein subgroups
        let keys =
            |v: &[PermGroup]| -> Vec<Vec<Permutation>> {
                v.iter()
                    .map(|g| g.enumerate_elements(100).unwrap())
                    .collect()
            };
        assert_eq!(keys(&a), keys(&b));
    }
}
