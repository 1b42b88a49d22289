//! Exhaustive or seeded-random sweeps of maps through a Kummer cover.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::covers::KummerCover;
use crate::error::{Error, Result};
use crate::fields::FieldDesc;
use crate::pmaps::Elem;

/// Above this many maps the sweep draws `samples` maps at random instead.
pub const MAX_EXHAUSTIVE: u128 = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub p: u32,
    pub n: u32,
    pub e: u32,
    pub pool: Vec<String>,
    pub seed: u64,
    pub jobs: usize,
    pub samples: usize,
}

impl SweepConfig {
    pub fn new(p: u32, n: u32, e: u32, pool: Vec<String>) -> Self {
        SweepConfig {
            p,
            n,
            e,
            pool,
            seed: 0,
            jobs: 0,
            samples: 300,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub p: u32,
    pub n: u32,
    pub e: u32,
    pub exhaustive: bool,
    pub checked: usize,
    pub extends: usize,
    pub splitting_checked: usize,
    pub discrepancies: usize,
    /// Images of the first few inconsistent maps.
    pub failures: Vec<Vec<String>>,
}

impl SweepReport {
    pub fn summary(&self) -> String {
        format!(
            "{} maps checked, {} discrepancies",
            self.checked, self.discrepancies
        )
    }
}

/// Parse a comma-separated pool; `y2` is shorthand for `y^2`.
pub fn parse_pool(src: &str, var: &str) -> Vec<String> {
    src.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| match s.strip_prefix(var) {
            Some(rest) if !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()) => {
                format!("{var}^{rest}")
            }
            _ => s.to_string(),
        })
        .collect()
}

/// Every choice of one pool entry per basis element, in lexicographic order.
pub fn enumerate(pool_len: usize, rank: usize) -> Vec<Vec<usize>> {
    let total = pool_len.pow(rank as u32);
    (0..total)
        .map(|mut k| {
            let mut pick = vec![0; rank];
            for slot in pick.iter_mut().rev() {
                *slot = k % pool_len;
                k /= pool_len;
            }
            pick
        })
        .collect()
}

pub fn sample(pool_len: usize, rank: usize, count: usize, seed: u64) -> Vec<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let idx: Vec<usize> = (0..pool_len).collect();
    (0..count)
        .map(|_| (0..rank).map(|_| *idx.choose(&mut rng).unwrap()).collect())
        .collect()
}

/// Run `f` on every item, on `jobs` threads (0 = rayon's default), keeping order.
pub fn par_map<T, R, F>(items: &[T], jobs: usize, f: F) -> Result<Vec<R>>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Limit(format!("thread pool: {e}")))?;
    Ok(pool.install(|| items.par_iter().map(&f).collect()))
}

/// Check the Main Theorem on every map of the sweep.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepReport> {
    let k = FieldDesc::finite_prime(cfg.p)?;
    let cover = KummerCover::new(&k, cfg.n, "y", "x")?;
    let ring = cover.base();
    let rank = ring.rank(cfg.e);
    if cfg.pool.is_empty() {
        return Err(Error::InvalidField("empty image pool".into()));
    }
    let pool: Vec<Elem<FieldDesc>> = cfg
        .pool
        .iter()
        .map(|s| ring.parse_member(s))
        .collect::<Result<_>>()?;
    let total = (pool.len() as u128).checked_pow(rank as u32);
    let exhaustive = total.is_some_and(|t| t <= MAX_EXHAUSTIVE);
    let picks = if exhaustive {
        enumerate(pool.len(), rank)
    } else {
        sample(pool.len(), rank, cfg.samples, cfg.seed)
    };
    let results = par_map(&picks, cfg.jobs, |pick| {
        let images = pick.iter().map(|&i| pool[i].clone()).collect();
        let psi = ring.map(cfg.e, images)?;
        cover.check_main_theorem(&psi).map(|(r, _)| r)
    })?;
    let mut report = SweepReport {
        p: cfg.p,
        n: cfg.n,
        e: cfg.e,
        exhaustive,
        checked: 0,
        extends: 0,
        splitting_checked: 0,
        discrepancies: 0,
        failures: Vec::new(),
    };
    for (pick, r) in picks.iter().zip(results) {
        let r = r?;
        report.checked += 1;
        report.extends += r.global_extends as usize;
        report.splitting_checked += (r.splitting_out.is_some()) as usize;
        if !r.consistent {
            report.discrepancies += 1;
            if report.failures.len() < 5 {
                report.failures.push(pick.iter().map(|&i| cfg.pool[i].clone()).collect());
            }
        }
    }
    Ok(report)
}
