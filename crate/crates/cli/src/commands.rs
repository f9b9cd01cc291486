//! One function per subcommand. Each returns the CSV text and whether its
//! check passed, and records inputs and derived constants in the manifest.

use std::cmp::Ordering;
use std::path::Path;

use anyhow::{bail, Context, Result};
use hyperlattice::conjcls::ConjCounter;
use hyperlattice::modgroup::{
    cache_load, cache_store, classical_error_series, guarded_count, BallCache, ClassicalRow, FrobeniusNorm, Threshold,
};
use hyperlattice::report::{fmt_g, Manifest};
use hyperlattice::specfun::{huber_closed, huber_oracle, sign_lemma_check, step_grid};
use hyperlattice::xlab::{
    discrete_average, geodesic_average, mean_value, spectral_expansion_eval, CountRow, CountSeries, SpectralCoeffFile,
};
use hyperlattice::zeta::{
    epstein_zeta, hecke_relation_check, HeckeConfig, EISENSTEIN_PERIOD_AT_HALF, EISENSTEIN_PERIOD_AT_HALF_NOTE,
};
use hyperlattice::{make_class, ConjClass, UpperHalfPoint};

use crate::args::*;
use crate::UsageError;

pub struct Output {
    pub csv: String,
    pub passed: bool,
}

impl Output {
    fn ok(csv: String) -> Self {
        Self { csv, passed: true }
    }
}

fn point_str(z: UpperHalfPoint) -> String {
    format!("{},{}", fmt_g(z.x()), fmt_g(z.y()))
}

fn record_grid(m: &mut Manifest, g: &GridArgs) {
    m.set("xmax", fmt_g(g.xmax)).set("grid", g.grid);
    if let Some(lo) = g.xmin {
        m.set("xmin", fmt_g(lo));
    }
}

fn class(args: &ClassArgs, m: &mut Manifest) -> Result<ConjClass> {
    let q = args.quad_form();
    let cls = make_class(q, args.nu).map_err(|e| UsageError::new("--nu", e))?;
    let [a, b, c] = q.coeffs();
    let (t, u) = cls.pell();
    m.set("form", format!("{a},{b},{c}"))
        .set("d", cls.disc())
        .set("nu", cls.nu())
        .set("pell_t_u", format!("{t},{u}"))
        .set("trace0", cls.trace0())
        .set("tau_nu", cls.tau_nu())
        .set("mu", fmt_g(cls.mu()))
        .set("segment_length", fmt_g(cls.segment_length()))
        .set("main_coeff", fmt_g(cls.main_coeff()));
    Ok(cls)
}

pub fn classical(a: &ClassicalArgs, cache: Option<&Path>, m: &mut Manifest) -> Result<Output> {
    let z = a.z;
    let w = a.w.unwrap_or(z);
    let grid = a.grid.points();
    m.set("z", point_str(z)).set("w", point_str(w)).set("main_coeff", 3);
    record_grid(m, &a.grid);
    let rows = match cache {
        Some(dir) => {
            let path = dir.join(format!(
                "ball_{}_{}__{}_{}.txt",
                fmt_g(z.x()),
                fmt_g(z.y()),
                fmt_g(w.x()),
                fmt_g(w.y())
            ));
            let ball = cached_ball(&path, z, w, a.grid.xmax, m)?;
            rows_from_ball(&ball, &grid)?
        }
        None => classical_error_series(z, w, &grid, 3.0)?,
    };
    // empirical observables only; the limiting mean is not asserted
    let n = rows.len() as f64;
    m.set("mean_e_half", fmt_g(rows.iter().map(|r| r.err_norm_half).sum::<f64>() / n))
        .set("mean_sq_e_half", fmt_g(rows.iter().map(|r| r.err_norm_half.powi(2)).sum::<f64>() / n))
        .set("max_abs_e_twothirds", fmt_g(rows.iter().map(|r| r.err_norm_twothirds.abs()).fold(0.0, f64::max)));
    let mut csv = String::from("X,N,mainterm,E,E_half,E_twothirds\n");
    for r in &rows {
        csv.push_str(&format!(
            "{},{},{},{},{},{}\n",
            fmt_g(r.x),
            r.n,
            fmt_g(r.mainterm),
            fmt_g(r.error),
            fmt_g(r.err_norm_half),
            fmt_g(r.err_norm_twothirds)
        ));
    }
    Ok(Output::ok(csv))
}

/// Loads the ball from `path` when it matches the points and is large
/// enough, otherwise enumerates it and stores it there.
fn cached_ball(path: &Path, z: UpperHalfPoint, w: UpperHalfPoint, radius: f64, m: &mut Manifest) -> Result<BallCache> {
    m.set("cache_file", path.display());
    if path.exists() {
        let ball = cache_load(path)?;
        if ball.center == z && ball.companion == w && ball.radius >= radius {
            m.set("cache", "hit");
            return Ok(ball);
        }
    }
    let parent = path.parent().expect("cache file has a directory");
    std::fs::create_dir_all(parent).with_context(|| format!("creating cache directory {}", parent.display()))?;
    let ball = BallCache::build(z, w, radius)?;
    cache_store(path, &ball)?;
    m.set("cache", "stored");
    Ok(ball)
}

fn rows_from_ball(ball: &BallCache, grid: &[f64]) -> Result<Vec<ClassicalRow>> {
    let norm = FrobeniusNorm::new(ball.center, ball.companion);
    let mut keyed: Vec<(f64, usize)> = ball.elements.iter().enumerate().map(|(i, g)| (norm.eval(g), i)).collect();
    keyed.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.1.cmp(&q.1)));
    let keys: Vec<f64> = keyed.iter().map(|k| k.0).collect();
    let mut rows = Vec::with_capacity(grid.len());
    for &x in grid {
        let thr = Threshold::new(x);
        let n = guarded_count(&keys, x, |i| {
            norm.cmp_exact(&ball.elements[keyed[i].1], thr.exact()) != Ordering::Greater
        }) as u64;
        let error = n as f64 - 3.0 * x;
        rows.push(ClassicalRow {
            x,
            n,
            mainterm: 3.0 * x,
            error,
            err_norm_half: error / x.sqrt(),
            err_norm_twothirds: error / x.powf(2.0 / 3.0),
        });
    }
    Ok(rows)
}

pub fn conj(a: &ConjArgs, m: &mut Manifest) -> Result<Output> {
    let cls = class(&a.class, m)?;
    let grid = a.grid.points();
    m.set("z", point_str(a.z)).set("algo", format!("{:?}", a.algo).to_lowercase());
    record_grid(m, &a.grid);
    let xmax = a.grid.xmax.max(1.0);
    let primary = match a.algo {
        Algo::Filter => ConjCounter::filter(&cls, a.z, xmax)?,
        Algo::Coset | Algo::Both => ConjCounter::coset(&cls, a.z, xmax)?,
    };
    let c = cls.main_coeff();
    let rows = grid
        .iter()
        .map(|&x| Ok(CountRow::new(x, primary.count(x)?, c)))
        .collect::<Result<Vec<_>>>()?;
    // the constant in |e_norm| <= c X^{1/6}, equivalently |E| <= c X^{2/3}
    let envelope = rows
        .iter()
        .filter(|r| r.x > 0.0)
        .map(|r| r.e.abs() / r.x.powf(2.0 / 3.0))
        .fold(0.0, f64::max);
    m.set("max_abs_e_twothirds", fmt_g(envelope));
    let mut passed = true;
    if a.algo == Algo::Both {
        let oracle = ConjCounter::filter(&cls, a.z, xmax)?;
        let mut mismatches = 0usize;
        for r in &rows {
            let want = oracle.count(r.x)?;
            if want != r.n {
                mismatches += 1;
                eprintln!("mismatch at X = {}: coset {} filter {want}", fmt_g(r.x), r.n);
            }
        }
        m.set("checked", rows.len()).set("mismatches", mismatches);
        passed = mismatches == 0;
    }
    let series = CountSeries {
        descriptor: cls.descriptor(),
        center: a.z,
        rows,
    };
    Ok(Output {
        csv: series.to_csv(),
        passed,
    })
}

fn note_period_at_half(m: &mut Manifest) {
    m.set("eisenstein_period_at_half", fmt_g(EISENSTEIN_PERIOD_AT_HALF))
        .set("eisenstein_period_at_half_note", EISENSTEIN_PERIOD_AT_HALF_NOTE);
}

pub fn meanvalue(a: &MeanArgs, m: &mut Manifest) -> Result<Output> {
    let cls = class(&a.class, m)?;
    m.set("z", point_str(a.z))
        .set("tmax", fmt_g(a.tmax))
        .set("step", fmt_g(a.step))
        .set("mode", a.mode);
    let curve = mean_value(&cls, a.z, a.tmax, a.step, a.mode)?;
    let (t, last) = curve.last().expect("grid is nonempty");
    m.set("sup_abs", fmt_g(curve.sup_abs)).set("m_at_tmax", format!("{} at T = {}", fmt_g(last), fmt_g(t)));
    note_period_at_half(m);
    Ok(Output::ok(curve.to_csv()))
}

pub fn geoavg(a: &AvgArgs, m: &mut Manifest) -> Result<Output> {
    let cls = class(&a.class, m)?;
    if a.k < 8 {
        return Err(UsageError::new("--k", "geodesic average needs at least 8 points").into());
    }
    m.set("k", a.k);
    record_grid(m, &a.grid);
    let avg = geodesic_average(&cls, a.k as usize, &a.grid.points())?;
    m.set(
        "running_max",
        format!("{} at X = {}", fmt_g(avg.running_max.0), fmt_g(avg.running_max.1)),
    );
    Ok(Output::ok(avg.to_csv()))
}

pub fn discavg(a: &AvgArgs, m: &mut Manifest) -> Result<Output> {
    let cls = class(&a.class, m)?;
    m.set("k", a.k);
    record_grid(m, &a.grid);
    let grid = a.grid.points();
    if grid[0] < 1.0 {
        return Err(UsageError::new("--xmin", "discrete averages need every X >= 1").into());
    }
    let avg = discrete_average(&cls, a.k as usize, &grid)?;
    let s = avg.signs;
    m.set("frac_negative_average", fmt_g(s.frac_negative_average))
        .set("frac_negative_integrated", fmt_g(s.frac_negative_integrated));
    Ok(Output::ok(avg.to_csv()))
}

pub fn huber_check(a: &HuberArgs, m: &mut Manifest) -> Result<Output> {
    let list = |v: &[f64]| v.iter().map(|x| fmt_g(*x)).collect::<Vec<_>>().join(",");
    m.set("t", list(&a.t)).set("x", list(&a.x)).set("tol", fmt_g(a.tol));
    if let Some(t) = a.t.iter().find(|t| **t == 0.0) {
        return Err(UsageError::new("--t", format!("t = {t} is not allowed")).into());
    }
    if let Some(x) = a.x.iter().find(|x| !(**x >= 1.0 && **x <= 1e4)) {
        return Err(UsageError::new("--x", format!("X = {x} is outside [1, 1e4]")).into());
    }
    let mut csv = String::from("t,X,closed,oracle,absdiff,margin\n");
    let mut worst = 0.0f64;
    let mut min_margin = f64::INFINITY;
    // empirical constant in |V(R,t)| <= c (1+|t|)^{-2} X^{-3/2}
    let mut remainder_const = 0.0f64;
    for &t in &a.t {
        for &x in &a.x {
            let h = huber_closed(t, x)?;
            remainder_const = remainder_const.max(h.remainder.norm() * (1.0 + t.abs()).powi(2) * x.powf(1.5));
            let oracle = 2.0 * huber_oracle(t, x)?;
            let absdiff = (h.value - oracle).abs();
            let margin = a.tol * oracle.abs() - absdiff;
            worst = worst.max(absdiff / oracle.abs().max(f64::MIN_POSITIVE));
            min_margin = min_margin.min(margin);
            csv.push_str(&format!(
                "{},{},{},{},{},{}\n",
                fmt_g(t),
                fmt_g(x),
                fmt_g(h.value),
                fmt_g(oracle),
                fmt_g(absdiff),
                fmt_g(margin)
            ));
        }
    }
    m.set("max_rel_diff", fmt_g(worst))
        .set("min_margin", fmt_g(min_margin))
        .set("remainder_const", fmt_g(remainder_const));
    Ok(Output {
        csv,
        passed: min_margin >= 0.0,
    })
}

pub fn signs(a: &SignArgs, m: &mut Manifest) -> Result<Output> {
    m.set("tmax", fmt_g(a.tmax)).set("step", fmt_g(a.step));
    let grid = step_grid(a.step, a.tmax);
    if grid.is_empty() {
        return Err(UsageError::new("--step", "step exceeds tmax, grid is empty").into());
    }
    let r = sign_lemma_check(&grid)?;
    m.set("points", r.samples.len())
        .set("min_re_a", format!("{} at t = {}", fmt_g(r.min_a.0), fmt_g(r.min_a.1)))
        .set("max_re_b", format!("{} at t = {}", fmt_g(r.max_b.0), fmt_g(r.max_b.1)))
        .set("violations", r.violations.len());
    // margin: distance from the nearer of the two sign changes
    let mut csv = String::from("t,re_a,re_b,margin\n");
    for s in &r.samples {
        let margin = s.re_a.min(-s.re_b);
        csv.push_str(&format!("{},{},{},{}\n", fmt_g(s.t), fmt_g(s.re_a), fmt_g(s.re_b), fmt_g(margin)));
    }
    Ok(Output {
        csv,
        passed: r.passed(),
    })
}

pub fn hecke(a: &HeckeArgs, m: &mut Manifest) -> Result<Output> {
    let cls = class(&a.class, m)?;
    if cls.nu() != 1 {
        return Err(UsageError::new("--nu", "the Hecke check uses the primitive class").into());
    }
    let config = HeckeConfig {
        n_eis: a.n_eis,
        n_zeta: a.n_zeta,
        nodes: a.nodes,
    };
    m.set("s", fmt_g(a.s))
        .set("tol", fmt_g(a.tol))
        .set("n_eis", a.n_eis)
        .set("n_zeta", a.n_zeta)
        .set("nodes", a.nodes);
    note_period_at_half(m);
    let r = hecke_relation_check(&cls.form(), a.s, a.tol, config)?;
    m.set("residual", fmt_g(r.residual));
    Ok(Output {
        csv: format!("{}\n{}\n", hyperlattice::zeta::HeckeReport::CSV_HEADER, r.csv_row()),
        passed: r.passed(),
    })
}

pub fn epstein(a: &EpsteinArgs, m: &mut Manifest) -> Result<Output> {
    let cls = class(&a.class, m)?;
    m.set("s", format!("{}+{}i", fmt_g(a.s), fmt_g(a.s_im))).set("n", a.n);
    let z = epstein_zeta(&cls.form(), hyperlattice::Complex64::new(a.s, a.s_im), a.n)?;
    m.set("tail_bound", fmt_g(z.tail_bound)).set("c_q", fmt_g(z.c_q));
    let csv = format!(
        "s_re,s_im,N,partial_re,partial_im,tail_bound,c_q\n{},{},{},{},{},{},{}\n",
        fmt_g(a.s),
        fmt_g(a.s_im),
        z.n,
        fmt_g(z.partial.re),
        fmt_g(z.partial.im),
        fmt_g(z.tail_bound),
        fmt_g(z.c_q)
    );
    Ok(Output::ok(csv))
}

pub fn spectral(a: &SpectralArgs, m: &mut Manifest) -> Result<Output> {
    m.set("coeffs", a.coeffs.display());
    record_grid(m, &a.grid);
    let coeffs = SpectralCoeffFile::load(&a.coeffs).map_err(|e| UsageError::new("--coeffs", e))?;
    m.set("terms", coeffs.rows.len());
    let grid = a.grid.points();
    if grid[0] < 1.0 {
        bail!(UsageError::new("--xmin", "the spectral expansion needs every X >= 1"));
    }
    Ok(Output::ok(spectral_expansion_eval(&coeffs, &grid)?.to_csv()))
}
