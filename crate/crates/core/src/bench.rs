//! Timing of rank and unrank as `m` grows with `n` fixed.
//!
//! For each `m` the harness draws `K` indices uniformly from `0..N`, times
//! unranking each one, then times ranking the dfn it produced. One warm-up
//! pair per `m` is discarded.

use std::fmt::Write as _;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::{BigUint, RandBigInt};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::count::total_dfns;
use crate::error::{Error, Result};
use crate::model::ChainParams;
use crate::order::IntervalOrder;
use crate::rank::{pos, pos_inv};

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub n: usize,
    pub m_list: Vec<usize>,
    pub trials: usize,
    pub order: IntervalOrder,
    pub seed: u64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            n: 10,
            m_list: (1..=10).map(|i| i * 100).collect(),
            trials: 500,
            order: IntervalOrder::TInc,
            seed: 42,
        }
    }
}

impl BenchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidParams("trials must be at least 1".into()));
        }
        if self.m_list.is_empty() {
            return Err(Error::InvalidParams("m list is empty".into()));
        }
        if self.m_list.iter().any(|&m| m < 2) {
            return Err(Error::InvalidParams("every m must be at least 2".into()));
        }
        if self.m_list.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParams(
                "m list must be strictly ascending".into(),
            ));
        }
        Ok(())
    }
}

/// Parses `A:B:STEP` (inclusive) or a comma-separated list.
pub fn parse_m_list(s: &str) -> Result<Vec<usize>> {
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|e| Error::Parse(format!("{t:?}: {e}")))
    };
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [a, b, step] => {
            let (a, b, step) = (num(a)?, num(b)?, num(step)?);
            if step == 0 || a > b {
                return Err(Error::Parse(format!("bad range {s:?}")));
            }
            Ok((a..=b).step_by(step).collect())
        }
        [single] => single.split(',').map(num).collect(),
        _ => Err(Error::Parse(format!(
            "expected A:B:STEP or a comma list, got {s:?}"
        ))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Operation {
    Rank,
    Unrank,
}

impl Operation {
    pub fn as_str(&self) -> &'static str {
        match self {
            Operation::Rank => "rank",
            Operation::Unrank => "unrank",
        }
    }
}

impl FromStr for Operation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rank" => Ok(Operation::Rank),
            "unrank" => Ok(Operation::Unrank),
            _ => Err(Error::Parse(format!("unknown operation {s:?}"))),
        }
    }
}

/// Mean and standard deviation of one operation at one `m`, in milliseconds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchSample {
    pub m: usize,
    pub op: Operation,
    pub mean_ms: f64,
    pub std_ms: f64,
    pub trials: usize,
}

/// `count` indices drawn uniformly from `0..bound` by rejection from
/// fixed-width random blocks.
pub fn sample_indices(bound: &BigUint, count: usize, rng: &mut ChaCha8Rng) -> Vec<BigUint> {
    (0..count).map(|_| rng.gen_biguint_below(bound)).collect()
}

/// Per-`m` seed, so that each instance's index stream does not depend on
/// which other `m` values are in the list.
fn rng_for(seed: u64, m: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(m as u64);
    rng
}

/// The indices `run_bench` would time for `m`.
pub fn bench_indices(cfg: &BenchConfig, m: usize) -> Vec<BigUint> {
    let bound = total_dfns(cfg.n, m);
    sample_indices(&bound, cfg.trials, &mut rng_for(cfg.seed, m))
}

fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Trials are interleaved across `m` (trial `t` runs for every `m` before
/// trial `t + 1`), so a burst of machine load is spread over the whole curve
/// instead of landing on one `m`.
pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<BenchSample>> {
    cfg.validate()?;
    let mut setups = Vec::with_capacity(cfg.m_list.len());
    for &m in &cfg.m_list {
        let params = ChainParams::new(cfg.n, m)?;
        let indices = bench_indices(cfg, m);
        let warm = pos_inv(&cfg.order, &params, &indices[0])?;
        std::hint::black_box(pos(&cfg.order, &warm)?);
        setups.push((params, indices));
    }

    let mut unrank_ms = vec![Vec::with_capacity(cfg.trials); setups.len()];
    let mut rank_ms = vec![Vec::with_capacity(cfg.trials); setups.len()];
    for trial in 0..cfg.trials {
        for (k, (params, indices)) in setups.iter().enumerate() {
            let idx = &indices[trial];
            let t = Instant::now();
            let dfn = pos_inv(&cfg.order, params, idx)?;
            unrank_ms[k].push(t.elapsed().as_secs_f64() * 1e3);

            let t = Instant::now();
            let back = pos(&cfg.order, &dfn)?;
            rank_ms[k].push(t.elapsed().as_secs_f64() * 1e3);
            debug_assert_eq!(back.value(), idx);
        }
    }

    let mut out = Vec::with_capacity(2 * cfg.m_list.len());
    for (k, &m) in cfg.m_list.iter().enumerate() {
        for (op, times) in [
            (Operation::Unrank, &unrank_ms[k]),
            (Operation::Rank, &rank_ms[k]),
        ] {
            let (mean_ms, std_ms) = mean_std(times);
            out.push(BenchSample {
                m,
                op,
                mean_ms,
                std_ms,
                trials: cfg.trials,
            });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LogLogFit {
    pub slope: f64,
    pub intercept: f64,
}

/// Ordinary least squares of `ln(mean)` on `ln(m)`.
pub fn fit_loglog(points: &[(f64, f64)]) -> Result<LogLogFit> {
    if points.len() < 3 {
        return Err(Error::DegenerateInput(format!(
            "need at least 3 points, got {}",
            points.len()
        )));
    }
    if points
        .iter()
        .any(|&(m, t)| m.is_nan() || t.is_nan() || m <= 0.0 || t <= 0.0)
    {
        return Err(Error::DegenerateInput(
            "sizes and times must be positive".into(),
        ));
    }
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::DegenerateInput("all sizes are equal".into()));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    Ok(LogLogFit {
        slope,
        intercept: my - slope * mx,
    })
}

/// [`fit_loglog`] over the samples of one operation.
pub fn fit_samples(samples: &[BenchSample], op: Operation) -> Result<LogLogFit> {
    let pts: Vec<(f64, f64)> = samples
        .iter()
        .filter(|s| s.op == op)
        .map(|s| (s.m as f64, s.mean_ms))
        .collect();
    fit_loglog(&pts)
}

/// CSV with header `m,op,mean_ms,std_ms,trials`, times to three decimals.
pub fn emit_csv<W: Write>(samples: &[BenchSample], dest: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(dest);
    w.write_record(["m", "op", "mean_ms", "std_ms", "trials"])?;
    for s in samples {
        w.write_record([
            s.m.to_string(),
            s.op.as_str().to_string(),
            format!("{:.3}", s.mean_ms),
            format!("{:.3}", s.std_ms),
            s.trials.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

const SVG_W: f64 = 520.0;
const SVG_H: f64 = 360.0;
const PAD: f64 = 50.0;

struct Panel {
    x0: f64,
    title: String,
    xs: (f64, f64),
    ys: (f64, f64),
}

impl Panel {
    fn px(&self, x: f64) -> f64 {
        self.x0 + PAD + (x - self.xs.0) / (self.xs.1 - self.xs.0).max(1e-12) * (SVG_W - 2.0 * PAD)
    }

    fn py(&self, y: f64) -> f64 {
        SVG_H - PAD - (y - self.ys.0) / (self.ys.1 - self.ys.0).max(1e-12) * (SVG_H - 2.0 * PAD)
    }

    fn frame(&self, out: &mut String, xlabel: &str, ylabel: &str) {
        let _ = write!(
            out,
            r#"<rect x="{:.1}" y="{PAD}" width="{:.1}" height="{:.1}" fill="none" stroke="black"/>"#,
            self.x0 + PAD,
            SVG_W - 2.0 * PAD,
            SVG_H - 2.0 * PAD
        );
        let _ = write!(
            out,
            r#"<text x="{:.1}" y="30" text-anchor="middle" font-size="14">{}</text>"#,
            self.x0 + SVG_W / 2.0,
            self.title
        );
        let _ = write!(
            out,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle" font-size="12">{xlabel}</text>"#,
            self.x0 + SVG_W / 2.0,
            SVG_H - 12.0
        );
        let _ = write!(
            out,
            r#"<text x="{:.1}" y="{:.1}" font-size="12" transform="rotate(-90 {:.1} {:.1})">{ylabel}</text>"#,
            self.x0 + 14.0,
            SVG_H / 2.0,
            self.x0 + 14.0,
            SVG_H / 2.0
        );
        for (v, anchor) in [(self.xs.0, "start"), (self.xs.1, "end")] {
            let _ = write!(
                out,
                r#"<text x="{:.1}" y="{:.1}" text-anchor="{anchor}" font-size="10">{v:.2}</text>"#,
                self.px(v),
                SVG_H - PAD + 14.0
            );
        }
        for v in [self.ys.0, self.ys.1] {
            let _ = write!(
                out,
                r#"<text x="{:.1}" y="{:.1}" text-anchor="end" font-size="10">{v:.2}</text>"#,
                self.x0 + PAD - 4.0,
                self.py(v) + 4.0
            );
        }
    }

    fn series(&self, out: &mut String, pts: &[(f64, f64)], color: &str) {
        let path: Vec<String> = pts
            .iter()
            .map(|&(x, y)| format!("{:.1},{:.1}", self.px(x), self.py(y)))
            .collect();
        let _ = write!(
            out,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
            path.join(" ")
        );
        for &(x, y) in pts {
            let _ = write!(
                out,
                r#"<circle cx="{:.1}" cy="{:.1}" r="3" fill="{color}"/>"#,
                self.px(x),
                self.py(y)
            );
        }
    }
}

fn bounds(values: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let lo = values.clone().fold(f64::INFINITY, f64::min);
    let hi = values.fold(f64::NEG_INFINITY, f64::max);
    if lo == hi {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

/// Two panels: mean time against `m`, and the same on log-log axes with
/// the fitted lines.
pub fn render_svg(samples: &[BenchSample]) -> Result<String> {
    let series = |op: Operation| -> Vec<(f64, f64)> {
        samples
            .iter()
            .filter(|s| s.op == op)
            .map(|s| (s.m as f64, s.mean_ms))
            .collect()
    };
    let unrank = series(Operation::Unrank);
    let rank = series(Operation::Rank);
    let both = || unrank.iter().chain(&rank);
    if both().next().is_none() {
        return Err(Error::DegenerateInput("no samples to plot".into()));
    }

    let mut out = format!(
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{SVG_H}" font-family="sans-serif">"#,
        2.0 * SVG_W
    );
    let linear = Panel {
        x0: 0.0,
        title: "mean time vs m".into(),
        xs: bounds(both().map(|p| p.0)),
        ys: bounds(both().map(|p| p.1).chain([0.0])),
    };
    linear.frame(&mut out, "m", "mean (ms)");
    linear.series(&mut out, &unrank, "#1f77b4");
    linear.series(&mut out, &rank, "#d62728");

    let logged = |pts: &[(f64, f64)]| -> Vec<(f64, f64)> {
        pts.iter()
            .filter(|p| p.0 > 0.0 && p.1 > 0.0)
            .map(|p| (p.0.ln(), p.1.ln()))
            .collect()
    };
    let (lu, lr) = (logged(&unrank), logged(&rank));
    if let Some(first) = lu.iter().chain(&lr).next().copied() {
        let all = || lu.iter().chain(&lr);
        let mut log_panel = Panel {
            x0: SVG_W,
            title: "log-log with fit".into(),
            xs: bounds(all().map(|p| p.0).chain([first.0])),
            ys: bounds(all().map(|p| p.1)),
        };
        let mut fits = Vec::new();
        for (op, pts, color) in [
            (Operation::Unrank, &unrank, "#1f77b4"),
            (Operation::Rank, &rank, "#d62728"),
        ] {
            if let Ok(fit) = fit_loglog(pts) {
                fits.push((op, fit, color));
            }
        }
        log_panel.title = match fits.as_slice() {
            [] => log_panel.title,
            fs => {
                let parts: Vec<String> = fs
                    .iter()
                    .map(|(op, f, _)| format!("{} slope {:.3}", op.as_str(), f.slope))
                    .collect();
                parts.join(", ")
            }
        };
        log_panel.frame(&mut out, "ln m", "ln mean");
        log_panel.series(&mut out, &lu, "#1f77b4");
        log_panel.series(&mut out, &lr, "#d62728");
        for (_, fit, color) in &fits {
            let (a, b) = log_panel.xs;
            let _ = write!(
                out,
                r#"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="{color}" stroke-dasharray="4 3"/>"#,
                log_panel.px(a),
                log_panel.py(fit.intercept + fit.slope * a),
                log_panel.px(b),
                log_panel.py(fit.intercept + fit.slope * b)
            );
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}
