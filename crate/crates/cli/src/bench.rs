//! Random-instance benchmark: outcome distribution and solve statistics per order.

use std::fmt::Write as _;
use std::time::Duration;

use rayon::prelude::*;
use skolemkit::lrs::InputSpec;
use skolemkit::solver::{find_all_zeros, random_instance, OutcomeKind, SolveConfig};

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub orders: Vec<usize>,
    pub count: usize,
    pub lo: i64,
    pub hi: i64,
    pub timeout: Duration,
    /// Use `timeout · order` per instance.
    pub scale_timeout: bool,
    pub seed: u64,
    pub threads: usize,
}

/// One solved-or-not instance.
#[derive(Clone, Debug, PartialEq)]
pub struct InstanceResult {
    pub order: usize,
    pub index: usize,
    pub label: &'static str,
    pub seconds: f64,
    pub zeros: usize,
    pub max_zero_index: Option<u64>,
    pub tree_depth: usize,
    pub max_jump: u64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct OrderRow {
    pub order: usize,
    pub total: usize,
    pub success: usize,
    pub degenerate: usize,
    pub not_simple: usize,
    pub zero_sequence: usize,
    pub timeout: usize,
    pub error: usize,
    pub mean_time: f64,
    pub mean_zeros: f64,
    pub max_zeros: usize,
    pub mean_max_zero_index: f64,
    pub mean_tree_depth: f64,
    pub mean_max_jump: f64,
}

impl OrderRow {
    pub fn timeout_pct(&self) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            100.0 * self.timeout as f64 / self.total as f64
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct BenchReport {
    pub rows: Vec<OrderRow>,
    pub instances: Vec<InstanceResult>,
}

/// Seed of instance `index` at `order`; independent of scheduling.
pub fn instance_seed(seed: u64, order: usize, index: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ ((order as u64) << 32) ^ index as u64
}

fn run_instance(cfg: &BenchConfig, order: usize, index: usize) -> InstanceResult {
    let spec = random_instance(order, cfg.lo, cfg.hi, instance_seed(cfg.seed, order, index)).expect("valid bench range");
    let timeout = if cfg.scale_timeout { cfg.timeout * order as u32 } else { cfg.timeout };
    let solve = SolveConfig::default().with_timeout(timeout);
    let mut r = InstanceResult {
        order,
        index,
        label: "error",
        seconds: 0.0,
        zeros: 0,
        max_zero_index: None,
        tree_depth: 0,
        max_jump: 0,
    };
    if let Ok(out) = find_all_zeros(&InputSpec::from(&spec), &solve) {
        r.label = out.label();
        r.seconds = out.stats.elapsed.as_secs_f64();
        r.tree_depth = out.stats.tree_depth;
        r.max_jump = out.stats.max_jump;
        if let OutcomeKind::Solved { zeros, .. } = &out.kind {
            r.zeros = zeros.len();
            r.max_zero_index = zeros.iter().map(|z| z.magnitude().try_into().unwrap_or(u64::MAX)).max();
        }
    }
    r
}

fn summarize(order: usize, rs: &[InstanceResult]) -> OrderRow {
    let mut row = OrderRow { order, total: rs.len(), ..OrderRow::default() };
    for r in rs {
        match r.label {
            "solved" => row.success += 1,
            "degenerate" => row.degenerate += 1,
            "not-simple" => row.not_simple += 1,
            "identically-zero" => row.zero_sequence += 1,
            "timeout" => row.timeout += 1,
            _ => row.error += 1,
        }
    }
    let ok: Vec<&InstanceResult> = rs.iter().filter(|r| r.label == "solved").collect();
    let mean = |f: &dyn Fn(&InstanceResult) -> f64, v: &[&InstanceResult]| {
        if v.is_empty() {
            0.0
        } else {
            v.iter().map(|r| f(r)).sum::<f64>() / v.len() as f64
        }
    };
    row.mean_time = mean(&|r| r.seconds, &ok);
    row.mean_zeros = mean(&|r| r.zeros as f64, &ok);
    row.max_zeros = ok.iter().map(|r| r.zeros).max().unwrap_or(0);
    let with_zero: Vec<&InstanceResult> = ok.iter().copied().filter(|r| r.max_zero_index.is_some()).collect();
    row.mean_max_zero_index = mean(&|r| r.max_zero_index.unwrap() as f64, &with_zero);
    row.mean_tree_depth = mean(&|r| r.tree_depth as f64, &ok);
    row.mean_max_jump = mean(&|r| r.max_jump as f64, &ok);
    row
}

pub fn run_bench(cfg: &BenchConfig) -> BenchReport {
    let jobs: Vec<(usize, usize)> = cfg.orders.iter().flat_map(|&o| (0..cfg.count).map(move |i| (o, i))).collect();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.threads.max(1)).build().expect("thread pool");
    let instances: Vec<InstanceResult> = pool.install(|| jobs.par_iter().map(|&(o, i)| run_instance(cfg, o, i)).collect());
    let rows = cfg
        .orders
        .iter()
        .map(|&o| {
            let rs: Vec<InstanceResult> = instances.iter().filter(|r| r.order == o).cloned().collect();
            summarize(o, &rs)
        })
        .collect();
    BenchReport { rows, instances }
}

impl BenchReport {
    /// Outcome counts and solve statistics per order, one line each.
    pub fn table(&self) -> String {
        let mut s = String::new();
        writeln!(
            s,
            "{:>5} {:>6} {:>7} {:>10} {:>10} {:>7} {:>8}   {:>9} {:>9} {:>9} {:>10} {:>10} {:>9}",
            "order", "total", "success", "degenerate", "not_simple", "timeout", "timeout%", "mean_s", "mean_zeros", "max_zeros", "mean_maxidx", "mean_depth", "mean_jump"
        )
        .unwrap();
        for r in &self.rows {
            writeln!(
                s,
                "{:>5} {:>6} {:>7} {:>10} {:>10} {:>7} {:>7.2}%   {:>9.3} {:>10.2} {:>9} {:>11.2} {:>10.2} {:>9.2}",
                r.order,
                r.total,
                r.success,
                r.degenerate,
                r.not_simple,
                r.timeout,
                r.timeout_pct(),
                r.mean_time,
                r.mean_zeros,
                r.max_zeros,
                r.mean_max_zero_index,
                r.mean_tree_depth,
                r.mean_max_jump
            )
            .unwrap();
        }
        s
    }

    /// CSV with a header row. Wall-clock times are left out so that a fixed
    /// seed reproduces the file byte for byte.
    pub fn csv(&self) -> Result<String, csv::Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "order",
            "total",
            "success",
            "degenerate",
            "not_simple",
            "zero_sequence",
            "timeout",
            "error",
            "timeout_pct",
            "mean_zeros",
            "max_zeros",
            "mean_max_zero_index",
            "mean_tree_depth",
            "mean_max_jump",
        ])?;
        for r in &self.rows {
            w.write_record([
                r.order.to_string(),
                r.total.to_string(),
                r.success.to_string(),
                r.degenerate.to_string(),
                r.not_simple.to_string(),
                r.zero_sequence.to_string(),
                r.timeout.to_string(),
                r.error.to_string(),
                format!("{:.2}", r.timeout_pct()),
                format!("{:.4}", r.mean_zeros),
                r.max_zeros.to_string(),
                format!("{:.4}", r.mean_max_zero_index),
                format!("{:.4}", r.mean_tree_depth),
                format!("{:.4}", r.mean_max_jump),
            ])?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("ascii csv"))
    }
}
