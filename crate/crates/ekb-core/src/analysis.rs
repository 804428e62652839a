//! How hard is it to forge a spoken fingerprint by splicing together words
//! the victim was already recorded saying?
//!
//! Two quantities are studied, both over a dictionary of `dict_size` words
//! per parity with `words_per_fp` words drawn per parity per fingerprint:
//!
//! * the probability that `num_keys` observed fingerprints contain no
//!   repeated word at all (the attacker ends up holding every dictionary
//!   word) — a sequential-exclusion product, its factorial closed form, and
//!   the exact all-distinct probability are all provided because the three
//!   are not the same quantity, and the report shows them side by side;
//! * the probability that a fresh fingerprint uses only the words observed
//!   from a single recorded fingerprint, so a spliced recording could voice
//!   it.
//!
//! Products of the form (a/b)^n underflow long before they stop being
//! meaningful, so everything is evaluated in log space; the exact oracle
//! uses integer falling factorials and is limited to small dictionaries.

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    /// The factorial closed form needs `dict_size` divisible by
    /// `words_per_fp`.
    #[error("dict_size must be divisible by words_per_fp")]
    ParamsNotDivisible,
    /// The exact oracle is restricted to dictionaries of at most 12 words.
    #[error("parameters too large for exact combinatorics")]
    TooLargeForExact,
}

/// Scenario parameters. The standard configuration is 256 words per parity
/// and 16 words per parity per fingerprint (32 spoken words); the attacker
/// observes `num_keys` fingerprints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ReorderParams {
    pub dict_size: usize,
    pub words_per_fp: usize,
    pub num_keys: usize,
}

/// Largest dictionary the exact oracle will enumerate.
pub const EXACT_DICT_LIMIT: usize = 12;

impl ReorderParams {
    pub fn new(dict_size: usize, words_per_fp: usize, num_keys: usize) -> Result<Self, AnalysisError> {
        if words_per_fp < 1 || dict_size < words_per_fp {
            return Err(AnalysisError::InvalidParams(
                "need dict_size >= words_per_fp >= 1".to_string(),
            ));
        }
        if num_keys < 1 {
            return Err(AnalysisError::InvalidParams("need num_keys >= 1".to_string()));
        }
        if num_keys.saturating_mul(words_per_fp) > dict_size {
            return Err(AnalysisError::InvalidParams(
                "word collection needs num_keys * words_per_fp <= dict_size".to_string(),
            ));
        }
        Ok(ReorderParams {
            dict_size,
            words_per_fp,
            num_keys,
        })
    }

    /// The standard configuration with the given number of observed keys.
    pub fn standard(num_keys: usize) -> Result<Self, AnalysisError> {
        ReorderParams::new(256, 16, num_keys)
    }
}

/// Sequential-exclusion product for the all-words-collected event: the
/// i-th fingerprint avoids the `i * words_per_fp` words already seen, with
/// all `2 * words_per_fp` of its draws, giving
/// prod_i ((d - i*w) / d)^(2w). Evaluated in log space.
pub fn collect_all_product(params: &ReorderParams) -> f64 {
    let d = params.dict_size as f64;
    let exponent = 2.0 * params.words_per_fp as f64;
    let mut log_sum = 0.0f64;
    for i in 0..params.num_keys {
        let avoid = (params.dict_size - i * params.words_per_fp) as f64;
        if avoid <= 0.0 {
            return 0.0;
        }
        log_sum += exponent * (avoid.ln() - d.ln());
    }
    log_sum.exp()
}

/// Factorial closed form of the collection probability, generalized from
/// the standard configuration: with n = dict_size / words_per_fp, returns
/// (n-1)! / n^n.
pub fn collect_all_closed_form(params: &ReorderParams) -> Result<f64, AnalysisError> {
    if params.dict_size % params.words_per_fp != 0 {
        return Err(AnalysisError::ParamsNotDivisible);
    }
    let n = params.dict_size / params.words_per_fp;
    let mut log_sum = 0.0f64;
    for k in 1..n {
        log_sum += (k as f64).ln();
    }
    log_sum -= n as f64 * (n as f64).ln();
    Ok(log_sum.exp())
}

/// Exact probability that `num_keys` fingerprints contain no repeated word
/// within or across fingerprints: per parity, all `num_keys * words_per_fp`
/// uniform draws are distinct, and the two parities are independent, so the
/// per-parity falling factorial ratio is squared. Exact integer arithmetic;
/// requires `dict_size <= 12`.
pub fn collect_all_exact(params: &ReorderParams) -> Result<f64, AnalysisError> {
    if params.dict_size > EXACT_DICT_LIMIT {
        return Err(AnalysisError::TooLargeForExact);
    }
    let d = params.dict_size as u128;
    let draws = (params.num_keys * params.words_per_fp) as u128;
    let mut numerator: u128 = 1;
    let mut denominator: u128 = 1;
    for j in 0..draws {
        numerator *= d - j;
        denominator *= d;
    }
    let per_parity = numerator as f64 / denominator as f64;
    Ok(per_parity * per_parity)
}

/// Probability that a uniformly random fingerprint uses, at every position,
/// only the `words_per_fp` words observed per parity: (w/d)^(2w). Defined
/// for the single-observed-fingerprint scenario.
pub fn reorder_success_probability(params: &ReorderParams) -> f64 {
    assert_eq!(
        params.num_keys, 1,
        "reorder success is defined for a single observed fingerprint"
    );
    let w = params.words_per_fp as f64;
    let d = params.dict_size as f64;
    (2.0 * w * (w.ln() - d.ln())).exp()
}

/// The ratio w^w / d^(2w), kept distinct from
/// [`reorder_success_probability`] because the two disagree and the report
/// presents both. Evaluated in log space.
pub fn reorder_literal_form(params: &ReorderParams) -> f64 {
    let w = params.words_per_fp as f64;
    let d = params.dict_size as f64;
    (w * w.ln() - 2.0 * w * d.ln()).exp()
}

/// Reference value for the standard configuration: 1 / 16^16. This is
/// 2^-64, exactly representable, so comparisons against it are exact.
pub fn reorder_reference_value() -> f64 {
    2f64.powi(-64)
}

/// Which event a simulation trial samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AttackEvent {
    /// All words across `num_keys` fingerprints are distinct, per parity.
    CollectAll,
    /// A fresh fingerprint lands entirely inside one observed fingerprint's
    /// word set (per parity); `num_keys` must be 1.
    ReorderMatch,
}

/// Direct simulation of the chosen event. Returns the sample mean and the
/// binomial standard error. Trials consume the generator strictly in order,
/// so a fixed seed reproduces the estimate bit for bit.
pub fn monte_carlo<R: Rng + ?Sized>(
    params: &ReorderParams,
    event: AttackEvent,
    trials: u64,
    rng: &mut R,
) -> (f64, f64) {
    assert!(trials >= 1000, "need at least 1000 trials");
    if event == AttackEvent::ReorderMatch {
        assert_eq!(params.num_keys, 1, "reorder match needs num_keys = 1");
    }

    let d = params.dict_size;
    let w = params.words_per_fp;
    // stamp array instead of clearing a seen-set every trial
    let mut seen = vec![0u64; d];
    let mut stamp = 0u64;
    let mut successes = 0u64;

    for _ in 0..trials {
        let ok = match event {
            AttackEvent::CollectAll => (0..2).all(|_| {
                stamp += 1;
                (0..params.num_keys * w).all(|_| {
                    let word = rng.random_range(0..d);
                    if seen[word] == stamp {
                        false
                    } else {
                        seen[word] = stamp;
                        true
                    }
                })
            }),
            AttackEvent::ReorderMatch => (0..2).all(|_| {
                stamp += 1;
                let mut observed = 0usize;
                while observed < w {
                    let word = rng.random_range(0..d);
                    if seen[word] != stamp {
                        seen[word] = stamp;
                        observed += 1;
                    }
                }
                (0..w).all(|_| seen[rng.random_range(0..d)] == stamp)
            }),
        };
        if ok {
            successes += 1;
        }
    }

    let estimate = successes as f64 / trials as f64;
    let std_error = (estimate * (1.0 - estimate) / trials as f64).sqrt();
    (estimate, std_error)
}

/// An estimate with its standard error.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub std_error: f64,
}

/// All the routes to the two probabilities, side by side, with relative
/// differences, for one parameter set.
#[derive(Debug, Clone, Serialize)]
pub struct DiscrepancyReport {
    pub params: ReorderParams,
    pub trials: u64,
    pub seed: u64,

    pub collect_product: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub collect_closed_form: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub collect_exact: Option<f64>,
    pub collect_monte_carlo: Estimate,

    pub reorder_probability: f64,
    pub reorder_literal: f64,
    pub reference_value: f64,
    pub reorder_monte_carlo: Estimate,
}

/// Relative difference of `a` against baseline `b`.
pub fn relative_difference(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        if a == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        (a - b).abs() / b.abs()
    }
}

/// Computes every route for the given parameters. The reorder quantities
/// are evaluated for the single-observed-fingerprint scenario with the same
/// dictionary shape.
pub fn discrepancy_report(params: &ReorderParams, trials: u64, seed: u64) -> DiscrepancyReport {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);

    let single = ReorderParams {
        num_keys: 1,
        ..*params
    };

    let (collect_est, collect_se) = monte_carlo(params, AttackEvent::CollectAll, trials, &mut rng);
    let (reorder_est, reorder_se) =
        monte_carlo(&single, AttackEvent::ReorderMatch, trials, &mut rng);

    DiscrepancyReport {
        params: *params,
        trials,
        seed,
        collect_product: collect_all_product(params),
        collect_closed_form: collect_all_closed_form(params).ok(),
        collect_exact: collect_all_exact(params).ok(),
        collect_monte_carlo: Estimate {
            value: collect_est,
            std_error: collect_se,
        },
        reorder_probability: reorder_success_probability(&single),
        reorder_literal: reorder_literal_form(&single),
        reference_value: reorder_reference_value(),
        reorder_monte_carlo: Estimate {
            value: reorder_est,
            std_error: reorder_se,
        },
    }
}

impl std::fmt::Display for DiscrepancyReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "word recombination analysis (dict {}, words/fingerprint {} per parity, keys {}, trials {}, seed {})",
            self.params.dict_size, self.params.words_per_fp, self.params.num_keys, self.trials, self.seed
        )?;
        writeln!(f, "\nall dictionary words collected:")?;
        writeln!(f, "  sequential product      {:.12e}", self.collect_product)?;
        match self.collect_closed_form {
            Some(v) => writeln!(f, "  factorial closed form   {v:.12e}")?,
            None => writeln!(f, "  factorial closed form   n/a (dict not divisible by words)")?,
        }
        match self.collect_exact {
            Some(v) => writeln!(f, "  exact all-distinct      {v:.12e}")?,
            None => writeln!(f, "  exact all-distinct      n/a (dict too large for exact)")?,
        }
        writeln!(
            f,
            "  monte carlo             {:.12e} (se {:.3e})",
            self.collect_monte_carlo.value, self.collect_monte_carlo.std_error
        )?;
        if let Some(cf) = self.collect_closed_form {
            writeln!(
                f,
                "  rel. diff product vs closed form  {:.3e}",
                relative_difference(self.collect_product, cf)
            )?;
        }
        if let Some(exact) = self.collect_exact {
            writeln!(
                f,
                "  rel. diff product vs exact        {:.3e}",
                relative_difference(self.collect_product, exact)
            )?;
            writeln!(
                f,
                "  rel. diff monte carlo vs exact    {:.3e}",
                relative_difference(self.collect_monte_carlo.value, exact)
            )?;
        }
        writeln!(f, "\nfresh fingerprint from one observed fingerprint's words:")?;
        writeln!(f, "  event probability       {:.12e}", self.reorder_probability)?;
        writeln!(f, "  literal ratio w^w/d^2w  {:.12e}", self.reorder_literal)?;
        writeln!(f, "  reference 1/16^16       {:.12e}", self.reference_value)?;
        writeln!(
            f,
            "  monte carlo             {:.12e} (se {:.3e})",
            self.reorder_monte_carlo.value, self.reorder_monte_carlo.std_error
        )?;
        writeln!(
            f,
            "  rel. diff event vs literal        {:.3e}",
            relative_difference(self.reorder_probability, self.reorder_literal)
        )?;
        write!(
            f,
            "  rel. diff monte carlo vs event    {:.3e}",
            relative_difference(self.reorder_monte_carlo.value, self.reorder_probability)
        )
    }
}
