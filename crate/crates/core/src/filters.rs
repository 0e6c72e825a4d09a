//! Number-theoretic decision filters on candidate Sylow counts: congruences,
//! factorial valuations, the solvable-group factorization criterion, the
//! product-decomposition test, and the mod-p^2 subgroup-count filter.
//!
//! Everything here is exact integer arithmetic over `u64`, factoring by
//! trial division; the scan ranges are desk scale by design.

use std::collections::HashMap;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FilterError {
    #[error("line {line}: {msg}")]
    ExtraList { line: usize, msg: String },
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization by trial division, ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factorize needs a positive integer");
    let mut factors = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0u32;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            factors.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        factors.push((n, 1));
    }
    factors
}

/// All divisors of `n`, sorted ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (p, e) in factorize(n) {
        let current = divs.clone();
        let mut power = 1u64;
        for _ in 0..e {
            power *= p;
            divs.extend(current.iter().map(|d| d * power));
        }
    }
    divs.sort_unstable();
    divs
}

/// v_p(n): the exponent of `p` in `n`.
pub fn valuation(mut n: u64, p: u64) -> u32 {
    assert!(p >= 2 && n >= 1);
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// The largest power of `p` dividing `n`.
pub fn p_part(n: u64, p: u64) -> u64 {
    p.pow(valuation(n, p))
}

pub fn odd_part(mut n: u64) -> u64 {
    assert!(n >= 1);
    while n % 2 == 0 {
        n /= 2;
    }
    n
}

/// Is `n` a prime power `q^t` with `t >= 1`? Returns `(q, t)`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    let factors = factorize(n);
    match factors.as_slice() {
        [(q, t)] => Some((*q, *t)),
        _ => None,
    }
}

/// v_p(n!) = sum over k of floor(n / p^k).
pub fn legendre_valuation(n: u64, p: u64) -> u64 {
    assert!(is_prime(p), "legendre valuation needs a prime");
    let mut total = 0u64;
    let mut pk = p;
    loop {
        total += n / pk;
        match pk.checked_mul(p) {
            Some(next) if next <= n => pk = next,
            _ => break,
        }
    }
    total
}

/// One maximal prime-power factor of a candidate count with its residue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PHallFactor {
    pub prime: u64,
    pub exponent: u32,
    pub prime_power: u64,
    pub residue: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PHallReport {
    pub passes: bool,
    pub factors: Vec<PHallFactor>,
}

/// Solvable-group criterion: every maximal prime-power factor of `n` must be
/// congruent to 1 mod `p`.
pub fn phall_solvable_test(n: u64, p: u64) -> PHallReport {
    assert!(n >= 1);
    assert!(is_prime(p));
    let factors: Vec<PHallFactor> = factorize(n)
        .into_iter()
        .map(|(q, e)| {
            let power = q.pow(e);
            PHallFactor {
                prime: q,
                exponent: e,
                prime_power: power,
                residue: power % p,
            }
        })
        .collect();
    let passes = factors.iter().all(|f| f.residue == 1);
    PHallReport { passes, factors }
}

/// Searches for a decomposition of `n` into factors that are either prime
/// powers congruent to 1 mod `p` or members of `extra` (user-supplied Sylow
/// counts of simple groups). Returns a sorted witness decomposition.
///
/// The search memoizes on the remaining divisor, which is sound because the
/// factor multiset is unordered.
pub fn mhall_product_test(n: u64, p: u64, extra: &[u64]) -> Option<Vec<u64>> {
    assert!(n >= 1);
    assert!(is_prime(p));
    let mut admissible: Vec<u64> = divisors(n)
        .into_iter()
        .filter(|&d| d > 1)
        .filter(|&d| {
            extra.contains(&d)
                || matches!(prime_power(d), Some((q, t)) if q.pow(t) % p == 1)
        })
        .collect();
    admissible.sort_unstable();
    admissible.dedup();

    fn search(r: u64, admissible: &[u64], memo: &mut HashMap<u64, Option<u64>>) -> bool {
        if r == 1 {
            return true;
        }
        if let Some(choice) = memo.get(&r) {
            return choice.is_some();
        }
        for &d in admissible {
            if d > r {
                break;
            }
            if r % d == 0 && search(r / d, admissible, memo) {
                memo.insert(r, Some(d));
                return true;
            }
        }
        memo.insert(r, None);
        false
    }

    let mut memo = HashMap::new();
    if !search(n, &admissible, &mut memo) {
        return None;
    }
    let mut witness = Vec::new();
    let mut r = n;
    while r > 1 {
        let d = memo[&r].expect("witness path recorded");
        witness.push(d);
        r /= d;
    }
    witness.sort_unstable();
    Some(witness)
}

/// Residue class of a candidate count modulo p^2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrobeniusClass {
    One,
    OnePlusP,
    Other,
}

impl std::fmt::Display for FrobeniusClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FrobeniusClass::One => write!(f, "1"),
            FrobeniusClass::OnePlusP => write!(f, "1+p"),
            FrobeniusClass::Other => write!(f, "other"),
        }
    }
}

/// Classifies `n` mod p^2. A count of subgroups of order p^a can only be
/// congruent to 1 or 1+p mod p^2 once p^(a+1) divides the group order, so
/// `Other` marks `n` as unattainable for such counts.
pub fn frobenius_pseudo_filter(n: u64, p: u64) -> FrobeniusClass {
    assert!(n >= 1);
    assert!(is_prime(p));
    let r = n % (p * p);
    if r == 1 {
        FrobeniusClass::One
    } else if r == (1 + p) % (p * p) {
        FrobeniusClass::OnePlusP
    } else {
        FrobeniusClass::Other
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CandidateStatus {
    SolvableAttainable,
    ProductAttainable,
    Open,
    PseudoCandidate,
}

impl std::fmt::Display for CandidateStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CandidateStatus::SolvableAttainable => write!(f, "solvable-attainable"),
            CandidateStatus::ProductAttainable => write!(f, "product-attainable"),
            CandidateStatus::Open => write!(f, "open"),
            CandidateStatus::PseudoCandidate => write!(f, "pseudo-candidate"),
        }
    }
}

/// Verdict of all filters on one candidate count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateVerdict {
    pub n: u64,
    pub p: u64,
    pub cong_mod_p: bool,
    pub phall_solvable: bool,
    pub mhall_witness: Option<Vec<u64>>,
    pub frobenius_class: FrobeniusClass,
    pub status: CandidateStatus,
}

/// Runs all filters on one candidate.
///
/// The status labels are conservative. `PseudoCandidate` additionally
/// requires the mod-p^2 class to be `Other`: with no product decomposition
/// and a residue class that no subgroup count of a group of order divisible
/// by p^(a+1) can attain, the candidate is flagged for the derivation
/// engine. A failed product test alone stays `Open`, because it only means
/// no construction exists with the supplied data.
pub fn classify_candidate(n: u64, p: u64, extra: &[u64]) -> CandidateVerdict {
    let phall = phall_solvable_test(n, p);
    let witness = mhall_product_test(n, p, extra);
    let class = frobenius_pseudo_filter(n, p);
    let status = if phall.passes {
        CandidateStatus::SolvableAttainable
    } else if witness.is_some() {
        CandidateStatus::ProductAttainable
    } else if class == FrobeniusClass::Other {
        CandidateStatus::PseudoCandidate
    } else {
        CandidateStatus::Open
    };
    CandidateVerdict {
        n,
        p,
        cong_mod_p: n % p == 1,
        phall_solvable: phall.passes,
        mhall_witness: witness,
        frobenius_class: class,
        status,
    }
}

/// Verdicts for every n <= max_n with n congruent to 1 mod p, ascending.
pub fn candidate_scan(p: u64, max_n: u64, extra: &[u64]) -> Vec<CandidateVerdict> {
    assert!(is_prime(p));
    (1..=max_n)
        .step_by(p as usize)
        .map(|n| classify_candidate(n, p, extra))
        .collect()
}

/// Parses a user-supplied list of simple-group Sylow counts: one positive
/// integer per line, `#` comments and blank lines allowed.
pub fn parse_extra_list(text: &str) -> Result<Vec<u64>, FilterError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let value: u64 = line.parse().map_err(|_| FilterError::ExtraList {
            line: i + 1,
            msg: format!("expected a positive integer, found {line:?}"),
        })?;
        if value == 0 {
            return Err(FilterError::ExtraList {
                line: i + 1,
                msg: "counts must be positive".into(),
            });
        }
        out.push(value);
    }
    Ok(out)
}
