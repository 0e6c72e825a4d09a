//! Two-phase derivation engine for refuting hypothetical Sylow counts.
//!
//! Phase one (structural steps S1-S3) reduces a minimal counterexample with
//! n = 2p+1 Sylow p-subgroups to finitely many candidate group orders.
//! Phase two (arithmetic rules R1-R6) explores every assignment of Sylow
//! counts consistent with the congruence and divisibility constraints and
//! tries to refute each one. The run produces a replayable trace whose every
//! numeric claim can be re-validated from scratch.
//!
//! The engine proves statements about hypothetical groups purely
//! arithmetically and never claims completeness: UNRESOLVED is a first-class
//! verdict.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::filters::{self, is_prime};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PipelineError {
    #[error("{p} does not divide the candidate order {order}")]
    PrimeDoesNotDivide { p: u64, order: u64 },
    #[error("count {n} is not admissible for order {order} at prime {p}")]
    InadmissibleCount { order: u64, p: u64, n: u64 },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("trace step {index} ({rule}) failed re-validation: {msg}")]
pub struct TraceError {
    pub index: usize,
    pub rule: RuleId,
    pub msg: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleId {
    S1,
    S2,
    S3,
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RuleId::S1 => "S1",
            RuleId::S2 => "S2",
            RuleId::S3 => "S3",
            RuleId::R1 => "R1",
            RuleId::R2 => "R2",
            RuleId::R3 => "R3",
            RuleId::R4 => "R4",
            RuleId::R5 => "R5",
            RuleId::R6 => "R6",
        };
        write!(f, "{s}")
    }
}

/// One choice of Sylow counts for a hypothetical group order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SylowCountAssignment {
    pub order: u64,
    pub counts: BTreeMap<u64, u64>,
}

impl fmt::Display for SylowCountAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .counts
            .iter()
            .map(|(q, n)| format!("n_{q}={n}"))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Why the structural reduction does not apply to a pair (p, n).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructuralFailure {
    PNotOddPrime,
    NotCongruentOneModP,
    NotTwoPPlusOne,
    NEven,
    NAtLeastPSquared,
}

impl fmt::Display for StructuralFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructuralFailure::PNotOddPrime => write!(f, "p is not an odd prime"),
            StructuralFailure::NotCongruentOneModP => write!(f, "n is not congruent to 1 mod p"),
            StructuralFailure::NotTwoPPlusOne => write!(f, "n is not 2p+1"),
            StructuralFailure::NEven => {
                write!(f, "n is even, so the odd-index Sylow 2 argument fails")
            }
            StructuralFailure::NAtLeastPSquared => write!(f, "n is not below p^2"),
        }
    }
}

/// Machine-checkable payload of one trace step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Payload {
    /// Structural preconditions that failed.
    Inapplicable { failed: Vec<StructuralFailure> },
    /// S1: a counterexample acts faithfully on its n Sylow subgroups and
    /// embeds in the alternating group of degree n.
    Embedding { p: u64, n: u64 },
    /// S2: v_p(n!) recomputed.
    Valuation { p: u64, n: u64, value: u64 },
    /// S2: |P| = p because v_p(n!) = 2 and n < p^2.
    SylowOrder { p: u64, n: u64, p_squared: u64 },
    /// S3: orbit sizes of P on the n Sylow subgroups.
    OrbitShape { p: u64, n: u64 },
    /// S3: the double p-cycle centralizer pins C_G(P) = P.
    CentralizerCollapse { p: u64, p_squared: u64 },
    /// S3: N/C embeds in a cyclic group of order p-1.
    NcBound { p: u64, p_minus_1: u64 },
    /// S3: |G| = p*n*d over the divisors d of the odd part of p-1.
    CandidateOrders {
        p: u64,
        n: u64,
        odd_part: u64,
        d_values: Vec<u64>,
        orders: Vec<u64>,
    },
    /// R1: admissible Sylow counts per prime.
    AdmissibleSets {
        order: u64,
        sets: Vec<(u64, Vec<u64>)>,
    },
    /// R2: the admissible set of q is {1}, so the Sylow q-subgroup is normal.
    ForcedNormal { order: u64, q: u64, sylow_order: u64 },
    /// R3 kill: with a normal Sylow T of prime order q and |P| = p, PT has a
    /// unique Sylow p-subgroup, so T normalizes P and n must divide
    /// order/(p*q); it does not.
    NormalizerAbsorption {
        assignment: SylowCountAssignment,
        p: u64,
        n: u64,
        q: u64,
        product_order: u64,
        quotient: u64,
    },
    /// R4 kill: prime-order Sylow subgroups intersect trivially, so their
    /// nonidentity elements are disjoint; the total exceeds the order.
    ElementCount {
        assignment: SylowCountAssignment,
        /// (q, n_q, n_q * (q - 1)) for every prime with v_q(order) = 1.
        terms: Vec<(u64, u64, u64)>,
        total: u64,
    },
    /// R5 kill: the normalizer of a Sylow q-subgroup has order m; every
    /// group of order m has all Sylow counts forced to 1 with Sylow orders
    /// r or r^2, hence is abelian; a full Sylow r'-subgroup of it is then
    /// centralized by the whole normalizer, so n_{r'} must divide order/m;
    /// it does not.
    AbelianNormalizer {
        assignment: SylowCountAssignment,
        q: u64,
        m: u64,
        forced: Vec<(u64, Vec<u64>)>,
        sylow_orders: Vec<(u64, u64)>,
        target_prime: u64,
        target_count: u64,
        quotient: u64,
    },
    /// R6: an assignment that survived every rule.
    Survivor { assignment: SylowCountAssignment },
    /// R6: exhaustion bookkeeping for one candidate order.
    Exhausted {
        order: u64,
        assignments: u64,
        refuted: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub rule: RuleId,
    pub statement: String,
    pub payload: Payload,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchVerdict {
    Contradiction,
    Unresolved,
}

impl fmt::Display for BranchVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BranchVerdict::Contradiction => write!(f, "CONTRADICTION"),
            BranchVerdict::Unresolved => write!(f, "UNRESOLVED"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Overall {
    Contradiction,
    Unresolved,
    Inapplicable,
}

impl fmt::Display for Overall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Overall::Contradiction => write!(f, "CONTRADICTION"),
            Overall::Unresolved => write!(f, "UNRESOLVED"),
            Overall::Inapplicable => write!(f, "INAPPLICABLE"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchResult {
    pub order: u64,
    pub verdict: BranchVerdict,
}

/// Replayable record of a full derivation run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationTrace {
    pub p: u64,
    pub n: u64,
    pub steps: Vec<TraceStep>,
    pub branch_results: Vec<BranchResult>,
    pub overall: Overall,
}

impl fmt::Display for DerivationTrace {
    /// One step per line as `RULE_ID | statement | payload`, then a
    /// tab-separated branch summary and the overall verdict.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "derivation: p={} n={}", self.p, self.n)?;
        for step in &self.steps {
            writeln!(
                f,
                "{} | {} | {}",
                step.rule,
                step.statement,
                payload_text(&step.payload)
            )?;
        }
        for branch in &self.branch_results {
            writeln!(f, "{}\t{}", branch.order, branch.verdict)?;
        }
        write!(f, "overall: {}", self.overall)
    }
}

fn fmt_set(set: &[u64]) -> String {
    let inner: Vec<String> = set.iter().map(|d| d.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

fn payload_text(payload: &Payload) -> String {
    match payload {
        Payload::Inapplicable { failed } => {
            let reasons: Vec<String> = failed.iter().map(|r| r.to_string()).collect();
            format!("failed=[{}]", reasons.join("; "))
        }
        Payload::Embedding { p, n } => format!("p={p} n={n}"),
        Payload::Valuation { p, n, value } => format!("p={p} n={n} v={value}"),
        Payload::SylowOrder { p, n, p_squared } => format!("p={p} n={n} p^2={p_squared}"),
        Payload::OrbitShape { p, n } => format!("sizes=[1,{p},{p}] n={n}"),
        Payload::CentralizerCollapse { p, p_squared } => format!("p={p} p^2={p_squared}"),
        Payload::NcBound { p, p_minus_1 } => format!("p={p} p-1={p_minus_1}"),
        Payload::CandidateOrders {
            p,
            n,
            odd_part,
            d_values,
            orders,
        } => format!(
            "p={p} n={n} oddpart={odd_part} d={} orders={}",
            fmt_set(d_values),
            fmt_set(orders)
        ),
        Payload::AdmissibleSets { order, sets } => {
            let parts: Vec<String> = sets
                .iter()
                .map(|(q, set)| format!("n_{q} in {}", fmt_set(set)))
                .collect();
            format!("order={order} {}", parts.join(" "))
        }
        Payload::ForcedNormal { order, q, sylow_order } => {
            format!("order={order} q={q} |T|={sylow_order}")
        }
        Payload::NormalizerAbsorption {
            assignment,
            p,
            n,
            q,
            product_order,
            quotient,
        } => format!(
            "[{assignment}] q={q} |PT|={product_order} n_{p} divides {quotient} < {n}"
        ),
        Payload::ElementCount {
            assignment, terms, total,
        } => {
            let parts: Vec<String> = terms
                .iter()
                .map(|(q, nq, contrib)| format!("{nq}*{}={contrib}", q - 1))
                .collect();
            format!(
                "[{assignment}] 1+{} = {total} > {}",
                parts.join("+"),
                assignment.order
            )
        }
        Payload::AbelianNormalizer {
            assignment,
            q,
            m,
            target_prime,
            target_count,
            quotient,
            ..
        } => format!(
            "[{assignment}] |N(Syl_{q})|={m} forces an abelian normalizer; n_{target_prime}={target_count} must divide {quotient}"
        ),
        Payload::Survivor { assignment } => format!("[{assignment}]"),
        Payload::Exhausted {
            order,
            assignments,
            refuted,
        } => format!("order={order} assignments={assignments} refuted={refuted}"),
    }
}

fn step(rule: RuleId, statement: impl Into<String>, payload: Payload) -> TraceStep {
    TraceStep {
        rule,
        statement: statement.into(),
        payload,
    }
}

/// Divisors of order/p^(v_p(order)) congruent to 1 mod p: every value the
/// Sylow p-count of a group of this order could take.
pub fn admissible_counts(order: u64, q: u64) -> Result<Vec<u64>, PipelineError> {
    assert!(is_prime(q), "admissible_counts needs a prime");
    if order % q != 0 {
        return Err(PipelineError::PrimeDoesNotDivide { p: q, order });
    }
    let coprime_part = order / filters::p_part(order, q);
    Ok(filters::divisors(coprime_part)
        .into_iter()
        .filter(|d| d % q == 1)
        .collect())
}

/// Outcome of the structural phase.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StructuralOutcome {
    Inapplicable { steps: Vec<TraceStep> },
    Reduced { orders: Vec<u64>, steps: Vec<TraceStep> },
}

/// Structural steps S1-S3: reduce a minimal counterexample with n = 2p+1
/// Sylow p-subgroups to the candidate orders {p*n*d : d | oddpart(p-1)}.
///
/// S1: the kernel of the conjugation action on the n Sylow subgroups would
/// be a smaller counterexample, so the action is faithful, and since all
/// p-elements are even the minimal counterexample embeds in A_n.
/// S2: v_p(n!) = 2 bounds |P| by p^2; the minimal-intersection pair argument
/// bounds |P| by the orbit size |^P Q| <= n < p^2, so |P| = p.
/// S3: P has orbits of sizes 1, p, p, so it is generated by a product of two
/// disjoint p-cycles of A_{2p}, whose centralizer there has order p^2; hence
/// C_G(P) = P, N/C is cyclic of order dividing p-1, the Sylow 2-subgroup is
/// cyclic (n is odd), and the normal complement plus minimality pin
/// |G| = p*n*d with d dividing the odd part of p-1.
pub fn structural_reduce(p: u64, n: u64) -> StructuralOutcome {
    let mut failed = Vec::new();
    if p == 2 || !is_prime(p) {
        failed.push(StructuralFailure::PNotOddPrime);
    }
    if p < 2 || n % p != 1 {
        failed.push(StructuralFailure::NotCongruentOneModP);
    }
    if n != 2 * p + 1 {
        failed.push(StructuralFailure::NotTwoPPlusOne);
    }
    if n % 2 == 0 {
        failed.push(StructuralFailure::NEven);
    }
    if p >= 2 && n >= p * p {
        failed.push(StructuralFailure::NAtLeastPSquared);
    }
    if !failed.is_empty() {
        let reasons: Vec<String> = failed.iter().map(|r| r.to_string()).collect();
        let steps = vec![step(
            RuleId::S1,
            format!("structural reduction does not apply: {}", reasons.join("; ")),
            Payload::Inapplicable { failed },
        )];
        return StructuralOutcome::Inapplicable { steps };
    }

    let mut steps = Vec::new();
    steps.push(step(
        RuleId::S1,
        format!(
            "a minimal counterexample acts faithfully on its {n} Sylow {p}-subgroups and embeds in A_{n}"
        ),
        Payload::Embedding { p, n },
    ));
    let v = filters::legendre_valuation(n, p);
    steps.push(step(
        RuleId::S2,
        format!("v_{p}({n}!) = {v}, so |P| is at most {p}^2"),
        Payload::Valuation { p, n, value: v },
    ));
    steps.push(step(
        RuleId::S2,
        format!(
            "a Sylow pair with trivial intersection gives |P| = |P : N_P(Q)| <= {n} < {}, so |P| = {p}",
            p * p
        ),
        Payload::SylowOrder {
            p,
            n,
            p_squared: p * p,
        },
    ));
    steps.push(step(
        RuleId::S3,
        format!("P has orbits of sizes 1, {p}, {p} on the Sylow subgroups, so P is generated by a product of two disjoint {p}-cycles in A_{}", 2 * p),
        Payload::OrbitShape { p, n },
    ));
    steps.push(step(
        RuleId::S3,
        format!(
            "the centralizer of that product in A_{} has order {}, so C_G(P) = P",
            2 * p,
            p * p
        ),
        Payload::CentralizerCollapse {
            p,
            p_squared: p * p,
        },
    ));
    steps.push(step(
        RuleId::S3,
        format!("N_G(P)/P is cyclic of order dividing {}", p - 1),
        Payload::NcBound { p, p_minus_1: p - 1 },
    ));
    let odd = filters::odd_part(p - 1);
    let d_values = filters::divisors(odd);
    let orders: Vec<u64> = d_values.iter().map(|d| p * n * d).collect();
    steps.push(step(
        RuleId::S3,
        format!(
            "|G:N_G(P)| = {n} is odd, so the Sylow 2-subgroup is cyclic; its normal complement and minimality force |G| = {p}*{n}*d with d | {odd}"
        ),
        Payload::CandidateOrders {
            p,
            n,
            odd_part: odd,
            d_values,
            orders: orders.clone(),
        },
    ));
    StructuralOutcome::Reduced { orders, steps }
}

/// Arithmetic rules R1-R6 against one candidate order.
///
/// Rule order is fixed (R2 normality facts, then R3, R4, R5 per assignment,
/// then the R6 exhaustion verdict) so traces are reproducible.
pub fn arithmetic_refute(
    order: u64,
    p: u64,
    n: u64,
) -> Result<(BranchVerdict, Vec<TraceStep>), PipelineError> {
    assert!(is_prime(p));
    if order % p != 0 {
        return Err(PipelineError::PrimeDoesNotDivide { p, order });
    }
    if !admissible_counts(order, p)?.contains(&n) {
        return Err(PipelineError::InadmissibleCount { order, p, n });
    }

    let primes: Vec<u64> = filters::factorize(order).into_iter().map(|(q, _)| q).collect();
    let sets: Vec<(u64, Vec<u64>)> = primes
        .iter()
        .map(|&q| Ok((q, admissible_counts(order, q)?)))
        .collect::<Result<_, PipelineError>>()?;

    let mut steps = Vec::new();
    steps.push(step(
        RuleId::R1,
        format!("admissible Sylow counts for a group of order {order}"),
        Payload::AdmissibleSets {
            order,
            sets: sets.clone(),
        },
    ));
    for (q, set) in &sets {
        if *q != p && set.as_slice() == [1] {
            steps.push(step(
                RuleId::R2,
                format!("n_{q} = 1 is forced, so the Sylow {q}-subgroup T is normal"),
                Payload::ForcedNormal {
                    order,
                    q: *q,
                    sylow_order: filters::p_part(order, *q),
                },
            ));
        }
    }

    // Cartesian product of the admissible sets, with n_p pinned to n.
    let choice_sets: Vec<(u64, Vec<u64>)> = sets
        .iter()
        .map(|(q, set)| {
            if *q == p {
                (*q, vec![n])
            } else {
                (*q, set.clone())
            }
        })
        .collect();
    let total: u64 = choice_sets.iter().map(|(_, s)| s.len() as u64).product();

    let mut refuted = 0u64;
    let mut survivor_seen = false;
    let mut indices = vec![0usize; choice_sets.len()];
    loop {
        let counts: BTreeMap<u64, u64> = choice_sets
            .iter()
            .zip(&indices)
            .map(|((q, set), &i)| (*q, set[i]))
            .collect();
        let assignment = SylowCountAssignment { order, counts };
        match refute_assignment(&assignment, p, n, &primes) {
            Some(kill) => {
                refuted += 1;
                steps.push(kill);
            }
            None => {
                survivor_seen = true;
                steps.push(step(
                    RuleId::R6,
                    "assignment survives every rule".to_string(),
                    Payload::Survivor { assignment },
                ));
            }
        }
        // odometer
        let mut pos = choice_sets.len();
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            indices[pos] += 1;
            if indices[pos] < choice_sets[pos].1.len() {
                break;
            }
            indices[pos] = 0;
            if pos == 0 {
                pos = usize::MAX;
                break;
            }
        }
        if pos == usize::MAX {
            break;
        }
    }

    steps.push(step(
        RuleId::R6,
        format!("explored every Sylow count assignment for order {order}"),
        Payload::Exhausted {
            order,
            assignments: total,
            refuted,
        },
    ));
    let verdict = if survivor_seen {
        BranchVerdict::Unresolved
    } else {
        BranchVerdict::Contradiction
    };
    Ok((verdict, steps))
}

/// Applies R3, R4, R5 in order to one assignment; returns the kill step.
fn refute_assignment(
    assignment: &SylowCountAssignment,
    p: u64,
    n: u64,
    primes: &[u64],
) -> Option<TraceStep> {
    let order = assignment.order;

    // R3: a normal Sylow T of prime order q normalizes P once PT has a
    // unique Sylow p-subgroup, so n | order/(p*q).
    if filters::valuation(order, p) == 1 {
        for &q in primes {
            if q == p || assignment.counts[&q] != 1 || filters::valuation(order, q) != 1 {
                continue;
            }
            let pq = p * q;
            let forced = admissible_counts(pq, p).expect("p divides pq");
            if forced.as_slice() != [1] {
                continue;
            }
            let quotient = order / pq;
            if quotient % n != 0 {
                return Some(step(
                    RuleId::R3,
                    format!(
                        "T (order {q}) is normal and PT of order {pq} has a unique Sylow {p}-subgroup, so T <= N_G(P) and n_{p} divides {quotient}; {n} does not divide {quotient}"
                    ),
                    Payload::NormalizerAbsorption {
                        assignment: assignment.clone(),
                        p,
                        n,
                        q,
                        product_order: pq,
                        quotient,
                    },
                ));
            }
        }
    }

    // R4: element counting over primes with v_q(order) = 1.
    let terms: Vec<(u64, u64, u64)> = primes
        .iter()
        .filter(|&&q| filters::valuation(order, q) == 1)
        .map(|&q| {
            let nq = assignment.counts[&q];
            (q, nq, nq * (q - 1))
        })
        .collect();
    let total: u64 = 1 + terms.iter().map(|(_, _, c)| c).sum::<u64>();
    if total > order {
        return Some(step(
            RuleId::R4,
            format!(
                "prime-order Sylow subgroups intersect trivially; counting their nonidentity elements gives {total} > {order}"
            ),
            Payload::ElementCount {
                assignment: assignment.clone(),
                terms,
                total,
            },
        ));
    }

    // R5: an abelian Sylow normalizer centralizes its full Sylow subgroups.
    for &q in primes {
        let nq = assignment.counts[&q];
        let m = order / nq;
        if m == order {
            continue;
        }
        let m_primes = filters::factorize(m);
        let mut forced = Vec::new();
        let mut sylow_orders = Vec::new();
        let mut all_forced = true;
        for &(r, e) in &m_primes {
            if e > 2 {
                all_forced = false;
                break;
            }
            sylow_orders.push((r, r.pow(e)));
            let set = admissible_counts(m, r).expect("r divides m");
            if set.as_slice() != [1] {
                all_forced = false;
                break;
            }
            forced.push((r, set));
        }
        if !all_forced {
            continue;
        }
        for &(r, _) in &m_primes {
            if filters::valuation(m, r) != filters::valuation(order, r) {
                continue;
            }
            let target_count = assignment.counts[&r];
            let quotient = order / m;
            if quotient % target_count != 0 {
                return Some(step(
                    RuleId::R5,
                    format!(
                        "N(Syl_{q}) has order {m}; every group of order {m} is abelian, so it centralizes its Sylow {r}-subgroup (full in G) and n_{r} divides {quotient}; {target_count} does not divide {quotient}"
                    ),
                    Payload::AbelianNormalizer {
                        assignment: assignment.clone(),
                        q,
                        m,
                        forced,
                        sylow_orders,
                        target_prime: r,
                        target_count,
                        quotient,
                    },
                ));
            }
        }
    }

    None
}

/// Runs the structural phase and then refutes every candidate order.
pub fn prove(p: u64, n: u64) -> DerivationTrace {
    match structural_reduce(p, n) {
        StructuralOutcome::Inapplicable { steps } => DerivationTrace {
            p,
            n,
            steps,
            branch_results: Vec::new(),
            overall: Overall::Inapplicable,
        },
        StructuralOutcome::Reduced { orders, steps } => {
            let mut all_steps = steps;
            let mut branch_results = Vec::new();
            for &order in &orders {
                let (verdict, branch_steps) =
                    arithmetic_refute(order, p, n).expect("candidate orders are admissible");
                all_steps.extend(branch_steps);
                branch_results.push(BranchResult { order, verdict });
            }
            let overall = if branch_results
                .iter()
                .all(|b| b.verdict == BranchVerdict::Contradiction)
            {
                Overall::Contradiction
            } else {
                Overall::Unresolved
            };
            DerivationTrace {
                p,
                n,
                steps: all_steps,
                branch_results,
                overall,
            }
        }
    }
}

/// Independent checker: re-derives every numeric claim in the trace from
/// scratch (divisibility, congruences, admissible sets, valuations) without
/// consulting the code paths that produced it.
pub fn validate_trace(trace: &DerivationTrace) -> Result<(), TraceError> {
    let fail = |index: usize, rule: RuleId, msg: String| TraceError { index, rule, msg };
    let p = trace.p;
    let n = trace.n;

    let recompute_admissible = |order: u64, q: u64| -> Vec<u64> {
        // local re-derivation: divisors of the q'-part congruent to 1 mod q
        let mut part = order;
        while part % q == 0 {
            part /= q;
        }
        let mut out = Vec::new();
        for d in 1..=part {
            if part % d == 0 && d % q == 1 {
                out.push(d);
            }
        }
        out
    };

    let mut seen_structural = false;
    let mut seen_inapplicable = false;
    for (i, stepx) in trace.steps.iter().enumerate() {
        let rule = stepx.rule;
        match &stepx.payload {
            Payload::Inapplicable { failed } => {
                seen_inapplicable = true;
                if failed.is_empty() {
                    return Err(fail(i, rule, "empty failure list".into()));
                }
                for reason in failed {
                    let holds = match reason {
                        StructuralFailure::PNotOddPrime => p == 2 || !is_prime(p),
                        StructuralFailure::NotCongruentOneModP => p < 2 || n % p != 1,
                        StructuralFailure::NotTwoPPlusOne => n != 2 * p + 1,
                        StructuralFailure::NEven => n % 2 == 0,
                        StructuralFailure::NAtLeastPSquared => n >= p * p,
                    };
                    if !holds {
                        return Err(fail(i, rule, format!("condition {reason:?} does not hold")));
                    }
                }
            }
            Payload::Embedding { p: sp, n: sn } => {
                seen_structural = true;
                if *sp != p || *sn != n {
                    return Err(fail(i, rule, "embedding step parameters mismatch".into()));
                }
                if n % p != 1 || n % 2 == 0 {
                    return Err(fail(i, rule, "embedding needs n odd and n = 1 mod p".into()));
                }
            }
            Payload::Valuation { p: sp, n: sn, value } => {
                let mut recomputed = 0u64;
                let mut pk = *sp;
                while pk <= *sn {
                    recomputed += sn / pk;
                    match pk.checked_mul(*sp) {
                        Some(next) => pk = next,
                        None => break,
                    }
                }
                if recomputed != *value {
                    return Err(fail(
                        i,
                        rule,
                        format!("v_{sp}({sn}!) recomputes to {recomputed}, not {value}"),
                    ));
                }
                if *value != 2 {
                    return Err(fail(i, rule, "structural phase requires v_p(n!) = 2".into()));
                }
            }
            Payload::SylowOrder { p: sp, n: sn, p_squared } => {
                if *p_squared != sp * sp || *sn >= *p_squared {
                    return Err(fail(i, rule, "Sylow order bound does not hold".into()));
                }
            }
            Payload::OrbitShape { p: sp, n: sn } => {
                if 1 + 2 * sp != *sn {
                    return Err(fail(i, rule, "orbit sizes do not sum to n".into()));
                }
            }
            Payload::CentralizerCollapse { p: sp, p_squared } => {
                if *p_squared != sp * sp {
                    return Err(fail(i, rule, "centralizer order is not p^2".into()));
                }
            }
            Payload::NcBound { p: sp, p_minus_1 } => {
                if *p_minus_1 != sp - 1 {
                    return Err(fail(i, rule, "N/C bound is not p-1".into()));
                }
            }
            Payload::CandidateOrders {
                p: sp,
                n: sn,
                odd_part,
                d_values,
                orders,
            } => {
                let mut odd = sp - 1;
                while odd % 2 == 0 {
                    odd /= 2;
                }
                if odd != *odd_part {
                    return Err(fail(i, rule, "odd part of p-1 mismatch".into()));
                }
                let divs: Vec<u64> = (1..=odd).filter(|d| odd % d == 0).collect();
                if &divs != d_values {
                    return Err(fail(i, rule, "divisor list of the odd part mismatch".into()));
                }
                let expect: Vec<u64> = divs.iter().map(|d| sp * sn * d).collect();
                if &expect != orders {
                    return Err(fail(i, rule, "candidate order list mismatch".into()));
                }
            }
            Payload::AdmissibleSets { order, sets } => {
                for (q, set) in sets {
                    if *order % q != 0 {
                        return Err(fail(i, rule, format!("{q} does not divide {order}")));
                    }
                    if recompute_admissible(*order, *q) != *set {
                        return Err(fail(
                            i,
                            rule,
                            format!("admissible set for q={q} fails re-validation"),
                        ));
                    }
                }
            }
            Payload::ForcedNormal { order, q, sylow_order } => {
                if recompute_admissible(*order, *q).as_slice() != [1] {
                    return Err(fail(i, rule, format!("n_{q} is not forced to 1")));
                }
                let mut pp = 1u64;
                let mut rest = *order;
                while rest % q == 0 {
                    rest /= q;
                    pp *= q;
                }
                if pp != *sylow_order {
                    return Err(fail(i, rule, "forced Sylow order mismatch".into()));
                }
            }
            Payload::NormalizerAbsorption {
                assignment,
                p: sp,
                n: sn,
                q,
                product_order,
                quotient,
            } => {
                let order = assignment.order;
                if assignment.counts.get(q) != Some(&1) {
                    return Err(fail(i, rule, format!("n_{q} is not 1 in the assignment")));
                }
                let vq = {
                    let mut v = 0;
                    let mut rest = order;
                    while rest % q == 0 {
                        rest /= q;
                        v += 1;
                    }
                    v
                };
                let vp = {
                    let mut v = 0;
                    let mut rest = order;
                    while rest % sp == 0 {
                        rest /= sp;
                        v += 1;
                    }
                    v
                };
                if vq != 1 || vp != 1 {
                    return Err(fail(i, rule, "R3 needs v_q = v_p = 1".into()));
                }
                if *product_order != sp * q || order % product_order != 0 {
                    return Err(fail(i, rule, "PT order mismatch".into()));
                }
                if recompute_admissible(*product_order, *sp).as_slice() != [1] {
                    return Err(fail(i, rule, "PT does not force a unique Sylow p".into()));
                }
                if *quotient != order / product_order || quotient % sn == 0 {
                    return Err(fail(i, rule, "R3 divisibility claim fails".into()));
                }
            }
            Payload::ElementCount {
                assignment,
                terms,
                total,
            } => {
                let order = assignment.order;
                let mut sum = 1u64;
                for (q, nq, contrib) in terms {
                    let mut v = 0;
                    let mut rest = order;
                    while rest % q == 0 {
                        rest /= q;
                        v += 1;
                    }
                    if v != 1 {
                        return Err(fail(i, rule, format!("R4 term uses q={q} with v != 1")));
                    }
                    if assignment.counts.get(q) != Some(nq) {
                        return Err(fail(i, rule, "R4 term count mismatch".into()));
                    }
                    if *contrib != nq * (q - 1) {
                        return Err(fail(i, rule, "R4 contribution mismatch".into()));
                    }
                    sum += contrib;
                }
                if sum != *total || *total <= order {
                    return Err(fail(i, rule, "R4 total does not exceed the order".into()));
                }
            }
            Payload::AbelianNormalizer {
                assignment,
                q,
                m,
                forced,
                sylow_orders,
                target_prime,
                target_count,
                quotient,
            } => {
                let order = assignment.order;
                let nq = *assignment
                    .counts
                    .get(q)
                    .ok_or_else(|| fail(i, rule, format!("assignment lacks n_{q}")))?;
                if nq * m != order {
                    return Err(fail(i, rule, "normalizer order mismatch".into()));
                }
                let m_factors = {
                    let mut fs = Vec::new();
                    let mut rest = *m;
                    let mut d = 2u64;
                    while d * d <= rest {
                        if rest % d == 0 {
                            let mut e = 0u32;
                            while rest % d == 0 {
                                rest /= d;
                                e += 1;
                            }
                            fs.push((d, e));
                        }
                        d += 1;
                    }
                    if rest > 1 {
                        fs.push((rest, 1));
                    }
                    fs
                };
                for (r, e) in &m_factors {
                    if *e > 2 {
                        return Err(fail(i, rule, "a Sylow order of m exceeds r^2".into()));
                    }
                    if recompute_admissible(*m, *r).as_slice() != [1] {
                        return Err(fail(i, rule, format!("n_{r} is not forced in order {m}")));
                    }
                }
                let expect_orders: Vec<(u64, u64)> =
                    m_factors.iter().map(|(r, e)| (*r, r.pow(*e))).collect();
                if *sylow_orders != expect_orders {
                    return Err(fail(i, rule, "Sylow orders of m mismatch".into()));
                }
                if forced.len() != m_factors.len() {
                    return Err(fail(i, rule, "forced set list incomplete".into()));
                }
                let vm = m_factors
                    .iter()
                    .find(|(r, _)| r == target_prime)
                    .map(|(_, e)| *e)
                    .ok_or_else(|| fail(i, rule, "target prime does not divide m".into()))?;
                let mut vo = 0u32;
                let mut rest = order;
                while rest % target_prime == 0 {
                    rest /= target_prime;
                    vo += 1;
                }
                if vm != vo {
                    return Err(fail(
                        i,
                        rule,
                        "target Sylow subgroup is not full in the whole group".into(),
                    ));
                }
                if assignment.counts.get(target_prime) != Some(target_count) {
                    return Err(fail(i, rule, "target count mismatch".into()));
                }
                if *quotient != order / m || quotient % target_count == 0 {
                    return Err(fail(i, rule, "R5 divisibility claim fails".into()));
                }
            }
            Payload::Survivor { assignment } => {
                for (q, nq) in &assignment.counts {
                    if !recompute_admissible(assignment.order, *q).contains(nq) {
                        return Err(fail(i, rule, format!("survivor n_{q} = {nq} inadmissible")));
                    }
                }
            }
            Payload::Exhausted { assignments, refuted, .. } => {
                if refuted > assignments {
                    return Err(fail(i, rule, "refuted more assignments than exist".into()));
                }
            }
        }
    }

    match trace.overall {
        Overall::Inapplicable => {
            if !seen_inapplicable {
                return Err(fail(
                    usize::MAX,
                    RuleId::S1,
                    "inapplicable verdict without a failing-condition step".into(),
                ));
            }
        }
        Overall::Contradiction => {
            if !seen_structural
                || trace.branch_results.is_empty()
                || !trace
                    .branch_results
                    .iter()
                    .all(|b| b.verdict == BranchVerdict::Contradiction)
            {
                return Err(fail(
                    usize::MAX,
                    RuleId::R6,
                    "contradiction verdict without fully refuted branches".into(),
                ));
            }
        }
        Overall::Unresolved => {
            if trace
                .branch_results
                .iter()
                .all(|b| b.verdict == BranchVerdict::Contradiction)
            {
                return Err(fail(
                    usize::MAX,
                    RuleId::R6,
                    "unresolved verdict although every branch was refuted".into(),
                ));
            }
        }
    }
    Ok(())
}
