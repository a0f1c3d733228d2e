use std::path::Path;

use fxxz_correlator::{
    build_integrand, extract, g_factor, residue_identity, standard_slots, Component, CorrelatorError, Mode,
    Path as ExtractPath,
};
use fxxz_edlab::{build_hamiltonian, dump_state, finite_vacua, ground_state, HamiltonianKind, Pinning, SolverOptions};
use fxxz_exactalg::json::SeriesJson;
use fxxz_exactalg::{int, QSeries};
use fxxz_freefield::{
    fidelity_curve, norm_bracket_closed, norm_bracket_expsum, overlap_closed, overlap_series, Sector,
};
use fxxz_magnet::{boundary_mag_regression, fig10_data, magnetisation_report, magnetisation_series};
use fxxz_model::{delta_to_q, h_inv, relation_residuals};
use fxxz_numkernel::{qkz_residual, ResidueOptions};
use fxxz_qprod::{Monomial, Pochhammer, QProduct};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::config::*;
use crate::grid::field_grid;
use crate::report::Outcome;

type Res = Result<Outcome, String>;

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn series(s: &QSeries) -> Value {
    serde_json::to_value(SeriesJson::from(s)).expect("series serialises")
}

fn sector(i: u8) -> Result<Sector, String> {
    Sector::from_index(i).ok_or_else(|| format!("sector must be 0 or 1, got {i}"))
}

pub fn verify_weights(c: &WeightsConfig) -> Res {
    let lin = |lo: f64, hi: f64, k: usize| {
        if c.grid < 2 {
            lo
        } else {
            lo + (hi - lo) * k as f64 / (c.grid - 1) as f64
        }
    };
    let mut rows = Vec::new();
    let mut worst: f64 = 0.0;
    for i in 0..c.grid {
        for j in 0..c.grid {
            let q = lin(c.q_min, c.q_max, i);
            let z = lin(c.zeta_min, c.zeta_max, j);
            let res = relation_residuals(q, c.r, z, c.zeta2, c.tol).map_err(err)?;
            worst = worst.max(res.max());
            rows.push(res);
        }
    }
    Ok(Outcome::new(
        worst < c.threshold,
        json!({ "max_residual": worst, "threshold": c.threshold, "points": rows }),
    ))
}

fn even_in_r(s: &QSeries) -> bool {
    s.iter().all(|(_, p)| p.terms().all(|(k, _)| k % 2 == 0))
}

pub fn norms(c: &NormsConfig) -> Res {
    let mut brackets = Vec::new();
    let mut ok = true;
    for sec in [Sector::Zero, Sector::One] {
        for primed in [false, true] {
            let e = norm_bracket_expsum(sec, primed, c.order).map_err(err)?;
            let p = norm_bracket_closed(sec, primed, c.order).map_err(err)?;
            let mismatch = e.first_mismatch(&p);
            ok &= mismatch.is_none();
            brackets.push(json!({
                "sector": sec.index(), "primed": primed, "first_mismatch_order": mismatch, "series": series(&p),
            }));
        }
    }
    let mut overlaps = Vec::new();
    for sec in [Sector::Zero, Sector::One] {
        let s = overlap_series(sec, c.order).map_err(err)?;
        let closed = overlap_closed(sec, c.order).map_err(err)?;
        let mismatch = s.first_mismatch(&closed);
        let even = even_in_r(&s);
        ok &= mismatch.is_none() && even;
        overlaps.push(json!({
            "sector": sec.index(), "first_mismatch_order": mismatch, "even_in_r": even, "series": series(&s),
        }));
    }
    Ok(Outcome::new(ok, json!({ "order": c.order, "norm_brackets": brackets, "overlaps": overlaps })))
}

pub fn fidelity(c: &FidelityConfig) -> Res {
    let mut csv = String::from("delta,h,r,fidelity\n");
    let mut curves = Vec::new();
    for &delta in &c.deltas {
        if !(delta < -1.0) {
            return Err(format!("Δ = {delta} is not below -1"));
        }
        let hi = h_inv(delta_to_q(delta));
        let grid = field_grid(c.h_min, c.h_max, c.steps, c.include_h_inv.then_some(hi));
        let curve = fidelity_curve(delta, &grid, c.tol);
        for row in &curve.rows {
            csv.push_str(&format!("{delta},{},{},{:.15e}\n", row.h, row.r, row.fidelity));
        }
        let best = curve.argmax().map(|r| r.h);
        curves.push(json!({ "delta": delta, "q": curve.q, "h_inv": curve.h_inv, "argmax_h": best, "rows": curve.rows }));
    }
    Ok(Outcome::new(true, json!({ "curves": curves })).with_csv(csv))
}

pub fn correlate(c: &CorrelateConfig) -> Res {
    let sec = sector(c.sector)?;
    let comp = match c.component {
        ComponentArg::Mp => Component::MinusPlus,
        ComponentArg::Pm => Component::PlusMinus,
    };
    let mode = match c.mode {
        ModeArg::Fracture => Mode::Fracture,
        ModeArg::Boundary => Mode::Boundary,
    };
    let path = match c.path {
        PathArg::Product => ExtractPath::Product,
        PathArg::Expsum => ExtractPath::ExpSum,
    };
    let (list, _) = build_integrand(sec, &comp.eps(), &standard_slots(2), mode).map_err(err)?;
    let g = g_factor(c.order).map_err(err)?;
    let (p, method, lambda2) = match extract(&list, path, c.order) {
        Ok(x) => (x.series, "contour", Some(x.lambda2)),
        Err(CorrelatorError::ContourNotSeparable { .. }) => {
            // g (P_{-+} + P_{+-}) = S
            let other = match comp {
                Component::MinusPlus => Component::PlusMinus,
                Component::PlusMinus => Component::MinusPlus,
            };
            let (ol, _) = build_integrand(sec, &other.eps(), &standard_slots(2), mode).map_err(err)?;
            let o = extract(&ol, path, c.order).map_err(err)?;
            let s = residue_identity(sec, mode, path, c.order).map_err(err)?;
            let gp = &s - &(&g * &o.series);
            let p = (&gp * &g.reciprocal().map_err(err)?).truncate(c.order);
            (p, "residue-complement", Some(o.lambda2))
        }
        Err(e) => return Err(err(e)),
    };
    let gp = (&g * &p).truncate(c.order);
    Ok(Outcome::new(
        true,
        json!({
            "order": c.order,
            "method": method,
            "contour_lambda2": lambda2,
            "series": series(&p),
            "g_times_series": series(&gp),
        }),
    ))
}

pub fn magnetize(c: &MagnetizeConfig, check: bool, special: bool, boundary: bool) -> Res {
    let rep = if boundary { boundary_mag_regression(c.order) } else { magnetisation_report(c.order) }.map_err(err)?;
    let mut passed = true;
    if check {
        passed &= rep.first_mismatch_order.is_none();
    }
    if special {
        passed &= rep.special_case_table.iter().all(|r| r.matches);
    }
    let mut v = serde_json::to_value(&rep).map_err(err)?;
    if !special {
        v.as_object_mut().expect("report is an object").remove("special_case_table");
    }
    v["model"] = json!(if boundary { "boundary" } else { "fracture" });
    Ok(Outcome::new(passed, v))
}

pub fn fig10(c: &Fig10Config) -> Res {
    if !(c.delta < -1.0) {
        return Err(format!("Δ = {} is not below -1", c.delta));
    }
    let hi = h_inv(delta_to_q(c.delta));
    let grid = field_grid(c.h_min, c.h_max, c.steps, c.include_h_inv.then_some(hi));
    let fig = fig10_data(c.delta, &grid, c.order).map_err(err)?;
    let csv = fig.to_csv();
    Ok(Outcome::new(true, serde_json::to_value(&fig).map_err(err)?).with_csv(csv))
}

pub fn qkz_check(c: &QkzConfig) -> Res {
    let re = |x: f64| Complex64::new(x, 0.0);
    let opts = ResidueOptions { tol: c.tol, n_max: c.n_max, ..ResidueOptions::default() };
    let rep = qkz_residual(re(c.zeta1), re(c.zeta2), re(c.q), re(c.r), &opts).map_err(err)?;
    let passed = rep.max_residual() < c.threshold;
    let mut v = serde_json::to_value(&rep).map_err(err)?;
    v["threshold"] = json!(c.threshold);
    v["n_max"] = json!(c.n_max);
    v["circle_points"] = json!(opts.circle_points);
    Ok(Outcome::new(passed, v))
}

pub fn ed(c: &EdConfig, dump: Option<&Path>) -> Res {
    let pinning = match c.pinning {
        PinningArg::Off => Pinning::Off,
        PinningArg::Neel => Pinning::Neel,
        PinningArg::AntiNeel => Pinning::AntiNeel,
    };
    let opts = SolverOptions { tol: c.tol, ..SolverOptions::default() };
    let rep = finite_vacua(c.sites, c.delta, c.h, c.sector, pinning, &opts).map_err(err)?;
    let mut dumped = Vec::new();
    if let Some(stem) = dump {
        for (tag, gs) in [("bulk", &rep.bulk), ("fractured", &rep.fractured)] {
            let name = format!("{}-{tag}", stem.file_name().map(|f| f.to_string_lossy()).unwrap_or_default());
            let (b, j) = dump_state(gs, c.sites, &stem.with_file_name(name)).map_err(err)?;
            dumped.push(json!({ "state": tag, "data": b, "sidecar": j }));
        }
    }
    let value = match c.observable {
        Observable::Mag => json!(rep.magnetisation),
        Observable::Fidelity => json!(rep.fidelity),
    };
    let mut v = serde_json::to_value(&rep).map_err(err)?;
    v["observable"] = json!(c.observable);
    v["value"] = value;
    v["dumped"] = json!(dumped);
    Ok(Outcome::new(true, v))
}

fn check(name: &str, f: impl FnOnce() -> Result<bool, String>) -> Value {
    let (ok, detail) = match f() {
        Ok(ok) => (ok, Value::Null),
        Err(e) => (false, json!(e)),
    };
    json!({ "check": name, "passed": ok, "error": detail })
}

pub fn selftest() -> Res {
    let order = 16;
    let one = QSeries::one(order);
    let checks = vec![
        check("euler pentagonal number theorem", || {
            let euler = QProduct::new().with(Pochhammer::q_bases(Monomial::q(1), &[1])).expand(40).map_err(err)?;
            let mut pent = QSeries::zero(40);
            for k in -10i32..=10 {
                let e = k * (3 * k - 1) / 2;
                if e <= 40 {
                    pent.add_at(e, &fxxz_exactalg::RPoly::constant(int(if k % 2 == 0 { 1 } else { -1 })));
                }
            }
            Ok(euler == pent)
        }),
        check("distinct parts equal odd parts", || {
            let p = QProduct::new()
                .with(Pochhammer::q_bases(Monomial::q(1).signed(-1), &[1]))
                .with(Pochhammer::q_bases(Monomial::q(1), &[2]))
                .expand(40)
                .map_err(err)?;
            Ok(p == QSeries::one(40))
        }),
        check("identity residue, both sectors", || {
            for sec in [Sector::Zero, Sector::One] {
                if residue_identity(sec, Mode::Fracture, ExtractPath::Product, order).map_err(err)? != one {
                    return Ok(false);
                }
            }
            Ok(true)
        }),
        check("exponential sum agrees with product", || {
            let (list, _) = build_integrand(Sector::Zero, &[1, -1], &standard_slots(2), Mode::Fracture).map_err(err)?;
            let a = extract(&list, ExtractPath::Product, 12).map_err(err)?.series;
            let b = extract(&list, ExtractPath::ExpSum, 12).map_err(err)?.series;
            let n1 = norm_bracket_expsum(Sector::One, true, order).map_err(err)?;
            let n2 = norm_bracket_closed(Sector::One, true, order).map_err(err)?;
            Ok(a == b && n1 == n2)
        }),
        check("magnetisation conjecture to q^16", || {
            let m = magnetisation_series(Sector::Zero, order).map_err(err)?;
            Ok(m == fxxz_magnet::conjecture_series(order))
        }),
        check("weight relations at a reference point", || {
            Ok(relation_residuals(-0.3, 0.4, 0.7, 1.3, 1e-17).map_err(err)?.max() < 1e-12)
        }),
        check("boundary qKZ at a reference point", || {
            let v = qkz_check(&QkzConfig::default())?;
            Ok(v.passed)
        }),
        check("two-site and split four-site chains", || {
            let o = SolverOptions::default();
            let a = build_hamiltonian(HamiltonianKind::OpenBulk, 2, -2.0, 0.0, Pinning::Off).map_err(err)?;
            let b = build_hamiltonian(HamiltonianKind::Fractured, 4, -2.0, 0.0, Pinning::Off).map_err(err)?;
            let ea = ground_state(&a, None, &o).map_err(err)?.energy;
            let eb = ground_state(&b, None, &o).map_err(err)?.energy;
            Ok((ea + 2.0).abs() < 1e-12 && (eb + 4.0).abs() < 1e-12)
        }),
    ];
    let passed = checks.iter().all(|c| c["passed"] == json!(true));
    Ok(Outcome::new(passed, json!({ "checks": checks })))
}
