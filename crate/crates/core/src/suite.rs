//! The verification suites behind each CLI subcommand: each produces a
//! table and a list of checks for one layer of the computation.

use std::time::Instant;

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::cert::{Check, Status, Table};
use crate::decomposition::{
    check_consistency, check_mod_pi_corollary, check_partner_supports, check_prefactor_divisibility, check_prop_ord,
    DecompTable,
};
use crate::error::{LtvError, Result};
use crate::gauss::{gauss_val, Center};
use crate::params::FieldParams;
use crate::period::{
    coeff_val, disc_sup_val_auto, operator_closed_forms, operator_estimate, rep_decompose, rep_enumerate,
    sup_closed_form, CoeffKind, NormedSeries, OperatorPart,
};
use crate::quaternion::{
    check_injectivity_consistency, check_lattice_inclusion, check_torus_intersection, lattice_subset, lattice_vals,
    verify_brackets, verify_group_law, verify_lie_axioms, LatticeKind,
};
use crate::report::Finding;
use crate::rfunc::{
    check_linear_lower_bound, check_minimality, check_monotone_steps, check_q_scaling, check_sigma_inverse,
    check_subadditive, check_subadditive_grid, r_func, sigma, t_sum, RTable, RViolation, R_ORACLE_BOUND,
};
use crate::torus::{check_disc_stability, check_display, check_main1, check_q_structure, oracle_a, QTable};
use crate::valuation::{fmt_rat, rat, rat_int, RationalVal};

/// Rows of the `R` table emitted by `rfunc`; the lemma suite covers the
/// whole range regardless.
pub const RFUNC_TABLE_ROWS: u64 = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tier {
    /// Desk-scale ranges.
    Fast,
    /// Slow, opt-in extensions.
    Slow,
}

impl Tier {
    pub fn number(self) -> u8 {
        match self {
            Tier::Fast => 1,
            Tier::Slow => 2,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteParams {
    pub fp: FieldParams,
    pub max_n: Option<u64>,
    pub disc_s: u32,
    pub tier: Tier,
}

impl SuiteParams {
    pub fn new(fp: FieldParams) -> Self {
        Self {
            fp,
            max_n: None,
            disc_s: 0,
            tier: Tier::Fast,
        }
    }

    fn q(&self) -> u64 {
        self.fp.q()
    }
}

#[derive(Debug, Clone, Default)]
pub struct Section {
    pub table: Option<Table>,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Coeffs,
    Action,
    Decomp,
    Rfunc,
    Norms,
    Lattices,
    Verify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Coeffs => "coeffs",
            Command::Action => "action",
            Command::Decomp => "decomp",
            Command::Rfunc => "rfunc",
            Command::Norms => "norms",
            Command::Lattices => "lattices",
            Command::Verify => "verify",
        }
    }

    /// The `--max-n` used when the flag is absent.
    pub fn default_max_n(self, q: u64) -> u64 {
        match self {
            Command::Coeffs => (q + 1) * q.pow(3),
            Command::Action | Command::Decomp | Command::Verify => 8,
            Command::Rfunc => 100_000,
            Command::Norms | Command::Lattices => 0,
        }
    }
}

pub fn run_command(cmd: Command, params: &SuiteParams) -> Result<Section> {
    match cmd {
        Command::Coeffs => coeffs(params),
        Command::Action => action(params),
        Command::Decomp => decomp(params),
        Command::Rfunc => rfunc(params),
        Command::Norms => norms(params),
        Command::Lattices => lattices(params),
        Command::Verify => verify(params),
    }
}

/// Runs `f` and stamps its runtime on every check it returns.
fn timed(f: impl FnOnce() -> Result<Vec<Check>>) -> Result<Vec<Check>> {
    let start = Instant::now();
    let checks = f()?;
    let elapsed = start.elapsed();
    Ok(checks.into_iter().map(|c| c.with_runtime(elapsed)).collect())
}

fn violation_check(name: &str, anchor: &str, range: String, v: Option<RViolation>) -> Check {
    let status = if v.is_none() { Status::Pass } else { Status::Fail };
    let witness = v.map(|v| format!("{} fails at {:?}", v.property, v.args));
    Check::new(name, anchor, range, status, witness)
}

fn val_str(v: &RationalVal) -> String {
    v.to_string()
}

pub fn coeffs(params: &SuiteParams) -> Result<Section> {
    let q = params.q();
    let limit = params.max_n.unwrap_or(Command::Coeffs.default_max_n(q));
    let anchor = "period map coefficients";
    let mut table = Table::new(&["n", "kind", "k", "exponents", "valuation"]);
    for n in 0..=limit {
        for kind in [CoeffKind::C, CoeffKind::D] {
            let Some(v) = coeff_val(kind, n, q) else { continue };
            let (k, exps) = match rep_decompose(n, q) {
                Some(rep) => (rep.k.to_string(), format!("{:?}", rep.exponents)),
                None => ("-".into(), "[]".into()),
            };
            let label = if kind == CoeffKind::C { "c" } else { "d" };
            table.push(vec![n.to_string(), label.into(), k, exps, v.to_string()]);
        }
    }
    let checks = timed(|| {
        let enum_limit = limit.min(20_000);
        let mut rep_findings = Vec::new();
        for n in 1..=enum_limit {
            let fast = rep_decompose(n, q);
            let all = rep_enumerate(n, q)?;
            let ok = all.len() <= 1 && all.first() == fast.as_ref();
            if !ok {
                rep_findings.push(Finding::fail("representation", format!("n={n}: {all:?} vs {fast:?}")));
                break;
            }
        }
        let mut support = Vec::new();
        for n in 0..=limit {
            let c_bad = coeff_val(CoeffKind::C, n, q).is_some() && n % (q + 1) != 0;
            let d_bad = coeff_val(CoeffKind::D, n, q).is_some() && (n + q) % (q + 1) != 0;
            if c_bad || d_bad {
                support.push(Finding::fail("support", format!("n={n}")));
                break;
            }
        }
        Ok(vec![
            Check::aggregate(
                "digit decision = exhaustive search for q-power representations",
                anchor,
                format!("1<=n<={enum_limit}"),
                &rep_findings,
            ),
            Check::aggregate(
                "c_n != 0 => (q+1) | n and d_n != 0 => (q+1) | n-1",
                anchor,
                format!("n<={limit}"),
                &support,
            ),
        ])
    })?;
    Ok(Section {
        table: Some(table),
        checks,
    })
}

pub fn action(params: &SuiteParams) -> Result<Section> {
    let fp = params.fp;
    let q = fp.q();
    let k_max = params.max_n.unwrap_or(Command::Action.default_max_n(q));
    let mut table = QTable::new(&fp);
    let mut out = Table::new(&["n", "Q_n", "deg", "gauss_val_at_0"]);
    for n in 0..=k_max {
        let qn = table.get(n).clone();
        let g = gauss_val(&qn, Center::Zero, &BigRational::zero(), &fp)?;
        let deg = qn.degree().map_or("-".into(), |d| d.to_string());
        out.push(vec![n.to_string(), qn.display_with("x").to_string(), deg, val_str(&g)]);
    }

    let mut checks = timed(|| {
        let mut exact = Vec::new();
        let mut modpi = Vec::new();
        for n in 1..=k_max.min(4) {
            let mut f = check_display(n, &mut table)?;
            modpi.push(f.pop().expect("two findings"));
            exact.push(f.pop().expect("two findings"));
        }
        let range = format!("1<=n<={}", k_max.min(4));
        Ok(vec![
            Check::aggregate("Q_n = displayed b_n, exactly", "first few terms", range.clone(), &exact),
            Check::aggregate(
                format!("Q_n = displayed b_n mod pi^{}", q - 1),
                "first few terms",
                range,
                &modpi,
            ),
        ])
    })?;

    let deg = 1 + k_max * (q + 1);
    checks.extend(timed(|| {
        let a = oracle_a(deg, &fp)?;
        let bad = (0..a.len()).find(|&n| (n as u64 + q) % (q + 1) != 0 && !a[n].is_zero());
        let vanishing = Check::new(
            "oracle a_n = 0 when (q+1) does not divide n-1",
            "vanishing lemma",
            format!("n<={deg}"),
            if bad.is_none() { Status::Pass } else { Status::Fail },
            bad.map(|n| format!("a_{n} = {}", a[n].display_with("E"))),
        );
        let mut per = [Vec::new(), Vec::new(), Vec::new(), Vec::new()];
        for n in 0..=k_max {
            for (i, f) in check_q_structure(n, &mut table, Some(&a), &fp)?.into_iter().enumerate() {
                per[i].push(f);
            }
        }
        let range = format!("k<={k_max}");
        let [oracle, degs, consts, norms] = per;
        Ok(vec![
            vanishing,
            Check::aggregate("oracle a_{1+k(q+1)} = pi^-k E Q_k(E^(q+1))", "recursion for b_n", range.clone(), &oracle),
            Check::aggregate("deg Q_k <= k", "lemma on Q_k", range.clone(), &degs),
            Check::aggregate("Q_k(0) = (-1)^k mod pi", "lemma on Q_k", range.clone(), &consts),
            Check::aggregate("||b_k|| = |pi|^-k on |E| <= 1", "lemma on Q_k", range, &norms),
        ])
    })?);

    checks.extend(timed(|| {
        let cs = [rat_int(1), rat(1, 2), rat(q as i64, q as i64 + 1)];
        let mut out = Vec::new();
        for c in &cs {
            let mut fs = Vec::new();
            for n in 0..=k_max {
                fs.push(check_main1(n, c, &mut table, &fp)?);
            }
            out.push(Check::aggregate(
                format!("analyticity bound at c = {}", fmt_rat(c)),
                "analyticity theorem",
                format!("n<={k_max}"),
                &fs,
            ));
        }
        let s = params.disc_s;
        let mut fs = Vec::new();
        for n in 0..=k_max {
            fs.push(check_disc_stability(n, s, &mut table, &fp)?);
        }
        out.push(Check::aggregate(
            format!("every term of g.u maps Delta_{s} into itself"),
            "critical discs",
            format!("n<={k_max}"),
            &fs,
        ));
        Ok(out)
    })?);
    Ok(Section {
        table: Some(out),
        checks,
    })
}

/// The decomposition range: `max_n`, extended in tier 2 to the third
/// repunit `1 + q + q^2` when that is at most 16.
fn decomp_limit(params: &SuiteParams) -> u64 {
    let q = params.q();
    let base = params.max_n.unwrap_or(Command::Decomp.default_max_n(q));
    let t2 = t_sum(2, q);
    if params.tier == Tier::Slow && t2 <= 16 {
        base.max(t2)
    } else {
        base
    }
}

pub fn decomp(params: &SuiteParams) -> Result<Section> {
    let fp = params.fp;
    let q = fp.q();
    let n_max = decomp_limit(params);
    let mut dt = DecompTable::new(&fp);
    let rtab = RTable::new(n_max + 1, q);
    let mut table = Table::new(&["n", "s", "Q_ns", "ord_exact", "ord_mod_pi", "bound"]);
    let mut reports = Vec::new();

    let mut checks = timed(|| {
        let mut per: [Vec<Finding>; 5] = Default::default();
        for n in 0..=n_max {
            for (i, f) in check_consistency(n, &mut dt)?.into_iter().enumerate() {
                per[i].push(f);
            }
        }
        let range = format!("n<={n_max}");
        let names = [
            "sum_s pi^(n-s) Q_{n,s} = Q_n",
            "Q_{n,s} is pi-integral",
            "||b_{n,s}|| <= |pi|^-s",
            "summand groups reproduce b_n",
            "summand levels within -1..=n",
        ];
        Ok(names
            .iter()
            .zip(&per)
            .map(|(name, fs)| Check::aggregate(*name, "decomposition of b_n", range.clone(), fs))
            .collect())
    })?;

    checks.extend(timed(|| {
        let anchor = "vanishing order propositions";
        let range = format!("0<=s<=n<={n_max}");
        let (mut mod_pi, mut exact, mut boundary) = (Vec::new(), Vec::new(), Vec::new());
        let (mut eq_mod_pi, mut eq_exact, mut corollary) = (Vec::new(), Vec::new(), Vec::new());
        for n in 0..=n_max {
            for s in 0..=n {
                let r = check_prop_ord(n, s, &mut dt, &rtab)?;
                let show = |o: Option<u32>| o.map_or("inf".to_string(), |v| v.to_string());
                let w = format!("n={n} s={s} ord={}/{} bound={}", show(r.ord_exact), show(r.ord_mod_pi), r.bound);
                mod_pi.push(Finding::check("mod pi", r.pass_mod_pi, w.clone()));
                exact.push(Finding::check("exact", r.pass_exact, w.clone()));
                if r.boundary {
                    boundary.push(Finding::check("boundary", r.boundary_pass_mod_pi, w.clone()));
                }
                if r.is_repunit {
                    let want = format!("{w} R(n)={}", rtab.get(n as i64));
                    eq_mod_pi.push(Finding::check("mod pi", r.equality_mod_pi == Some(true), want.clone()));
                    eq_exact.push(Finding::check("exact", r.equality_exact == Some(true), want));
                }
                reports.push(r);
            }
            corollary.push(check_mod_pi_corollary(n, &mut dt, &rtab)?);
        }
        let repunits: Vec<String> = (0..8)
            .map(|l| t_sum(l, q))
            .take_while(|t| *t <= n_max)
            .map(|t| t.to_string())
            .collect();
        let rep_range = format!("n in {{{}}}", repunits.join(","));
        Ok(vec![
            Check::aggregate("ord_(x-1) Q_{n,s} >= R(s - 2 floor((n-s)/(q-1))) mod pi", anchor, range.clone(), &mod_pi),
            Check::aggregate("ord_(x-1) Q_{n,s} >= R(s - 2 floor((n-s)/(q-1))) exactly", anchor, range.clone(), &exact),
            Check::aggregate("ord_(x-1) Q_{n,s} >= 1 on the boundary", anchor, range.clone(), &boundary),
            Check::aggregate("ord_(x-1) Q_{n,n} = R(n) at repunits, mod pi", anchor, rep_range.clone(), &eq_mod_pi),
            Check::aggregate("ord_(x-1) Q_{n,n} = R(n) at repunits, exactly", anchor, rep_range, &eq_exact),
            Check::aggregate("Q_n = (x-1)^R(n) h(x) mod pi", anchor, format!("n<={n_max}"), &corollary),
        ])
    })?);

    checks.extend(timed(|| {
        let limit = (q + 1) * q.pow(3);
        let anchor = "remark on partner pairs";
        let mut out: Vec<Check> = check_partner_supports(limit, q)
            .into_iter()
            .map(|f| Check::from_finding(f, anchor, format!("m+l<={limit}")))
            .collect();
        out.push(Check::from_finding(
            check_prefactor_divisibility(limit, q),
            anchor,
            format!("n<={limit}"),
        ));
        Ok(out)
    })?);

    for r in &reports {
        let row = dt.q_ns(r.n, r.s)?;
        let show = |o: Option<u32>| o.map_or("inf".to_string(), |v| v.to_string());
        table.push(vec![
            r.n.to_string(),
            r.s.to_string(),
            row.display_with("x").to_string(),
            show(r.ord_exact),
            show(r.ord_mod_pi),
            r.bound.to_string(),
        ]);
    }
    Ok(Section {
        table: Some(table),
        checks,
    })
}

pub fn rfunc(params: &SuiteParams) -> Result<Section> {
    let q = params.q();
    let max = params.max_n.unwrap_or(Command::Rfunc.default_max_n(q));
    let anchor = "lemma on R";
    let mut table = Table::new(&["n", "R", "sigma"]);
    for n in 0..=max.min(RFUNC_TABLE_ROWS) {
        let digits: Vec<String> = sigma(n as i64, q).iter().map(|(l, d)| format!("{l}:{d}")).collect();
        table.push(vec![n.to_string(), r_func(n as i64, q).to_string(), digits.join(" ")]);
    }
    let checks = timed(|| {
        let t = RTable::new(max, q);
        let m = max as i64;
        let small = 2000.min(m / 2);
        let step = (m / 300).max(1);
        let scale = 10_000.min((m - 1) / q as i64);
        let minimal = match params.tier {
            Tier::Fast => max.min(5000),
            Tier::Slow => max.min(R_ORACLE_BOUND),
        };
        let parts: Vec<Check> = [
            (
                "R non-decreasing with R(n+1) - R(n) <= 1",
                format!("0<=n<={m}"),
                check_monotone_steps(&t, m),
            ),
            (
                "R(i+j) <= R(i) + R(j)",
                format!("-50<=i,j<={small}"),
                check_subadditive(&t, -50, small),
            ),
            (
                "R(i+j) <= R(i) + R(j) on a grid",
                format!("i+j<={m}, stride {step}"),
                check_subadditive_grid(&t, m, step),
            ),
            ("q R(n) >= R(qn+1)", format!("1<=n<={scale}"), check_q_scaling(&t, scale)),
            (
                "R(n) >= (q-1)n/q, equality only at 0",
                format!("0<=n<={m}"),
                check_linear_lower_bound(&t, m),
            ),
            ("P(sigma(n)) = n", format!("0<=n<={m}"), check_sigma_inverse(q, m)),
        ]
        .into_iter()
        .map(|(name, range, v)| violation_check(name, anchor, range, v))
        .collect();
        let mut out = parts;
        out.push(violation_check(
            "R(n) = min R' over P^-1(n)",
            "minimality of R",
            format!("0<=n<={minimal}"),
            check_minimality(&t, minimal)?,
        ));
        Ok(out)
    })?;
    Ok(Section {
        table: Some(table),
        checks,
    })
}

/// Highest disc levels for the sup-norm and operator checks.
fn norm_levels(params: &SuiteParams) -> (u32, u32) {
    match params.tier {
        Tier::Fast => (5, 4),
        Tier::Slow if params.q() <= 3 => (6, 5),
        Tier::Slow => (5, 4),
    }
}

pub fn norms(params: &SuiteParams) -> Result<Section> {
    let fp = params.fp;
    let q = fp.q();
    let (sup_max, op_max) = norm_levels(params);
    let mut table = Table::new(&["quantity", "s", "computed", "closed_form", "truncation"]);

    let sup_jobs: Vec<(NormedSeries, u32)> = NormedSeries::ALL
        .iter()
        .flat_map(|w| (0..=sup_max).map(move |s| (*w, s)))
        .collect();
    let start = Instant::now();
    let sups: Vec<(RationalVal, u64)> = sup_jobs
        .par_iter()
        .map(|(w, s)| disc_sup_val_auto(&w.spec(), *s, &fp))
        .collect::<Result<_>>()?;
    let sup_time = start.elapsed();

    let op_jobs: Vec<(OperatorPart, u32)> = OperatorPart::ALL
        .iter()
        .flat_map(|w| (0..=op_max).map(move |s| (*w, s)))
        .collect();
    let start = Instant::now();
    let ops: Vec<RationalVal> = op_jobs
        .par_iter()
        .map(|(w, s)| operator_estimate(*w, *s, &fp))
        .collect::<Result<_>>()?;
    let op_time = start.elapsed();

    let mut checks = Vec::new();
    for w in NormedSeries::ALL {
        let mut fs = Vec::new();
        for ((ww, s), (v, trunc)) in sup_jobs.iter().zip(&sups) {
            if *ww != w {
                continue;
            }
            let want = RationalVal::Finite(sup_closed_form(w, *s, q));
            let label = w.spec().label();
            table.push(vec![label.clone(), s.to_string(), val_str(v), val_str(&want), trunc.to_string()]);
            fs.push(Finding::check(format!("s={s}"), *v == want, format!("s={s}: {v} vs {want}")));
        }
        checks.push(
            Check::aggregate(
                format!("sup norm of {} on Delta_s", w.spec().label()),
                "supremum norms",
                format!("0<=s<={sup_max}"),
                &fs,
            )
            .with_runtime(sup_time),
        );
    }
    for w in OperatorPart::ALL {
        let mut fs = Vec::new();
        for ((ww, s), v) in op_jobs.iter().zip(&ops) {
            if *ww != w {
                continue;
            }
            let (long, short) = operator_closed_forms(w, *s, q);
            let want = RationalVal::Finite(short.clone());
            table.push(vec![w.label().into(), s.to_string(), val_str(v), val_str(&want), "-".into()]);
            let ok = *v == want && long == short;
            fs.push(Finding::check(format!("s={s}"), ok, format!("s={s}: {v} vs {want}")));
        }
        checks.push(
            Check::aggregate(
                format!("|{} pi^(-1/((q+1)q^s))| on Delta_s", w.label()),
                "operator estimates",
                format!("0<=s<={op_max}"),
                &fs,
            )
            .with_runtime(op_time),
        );
    }
    let at0 = |w: OperatorPart| {
        op_jobs
            .iter()
            .zip(&ops)
            .find(|((ww, s), _)| *ww == w && *s == 0)
            .map(|(_, v)| v.clone())
            .expect("s = 0 is always computed")
    };
    let (a, b) = (at0(OperatorPart::Phi0Squared), at0(OperatorPart::Phi1Squared));
    let (wa, wb) = (RationalVal::frac(q as i64, q as i64 + 1), RationalVal::frac(1, q as i64 + 1));
    checks.push(Check::new(
        "s = 0 operator norms |pi|^(q/(q+1)) and |pi|^(1/(q+1))",
        "operator estimates",
        "s=0",
        if a == wa && b == wb { Status::Pass } else { Status::Fail },
        Some(format!("{a}, {b}")),
    ));
    Ok(Section {
        table: Some(table),
        checks,
    })
}

pub fn lattices(params: &SuiteParams) -> Result<Section> {
    let p = params.fp.p();
    let q = params.q();
    const S_MAX: u32 = 6;
    let mut table = Table::new(&["lattice", "s", "v_x1", "v_x2", "v_y1", "v_y2"]);
    for kind in LatticeKind::ALL {
        let levels = if kind == LatticeKind::H0Prime { 0..=0 } else { 0..=S_MAX };
        for s in levels {
            let v = lattice_vals(kind, s, p)?;
            let mut row = vec![kind.label().to_string(), s.to_string()];
            row.extend(v.iter().map(fmt_rat));
            table.push(row);
        }
    }
    let checks = timed(|| {
        let mut out: Vec<Check> = verify_group_law()
            .into_iter()
            .map(|f| Check::from_finding(f, "co-multiplication", "symbolic"))
            .collect();
        out.extend(
            verify_brackets()
                .into_iter()
                .chain(verify_lie_axioms())
                .map(|f| Check::from_finding(f, "Lie algebra basis", "symbolic")),
        );
        out.push(Check::from_finding(check_torus_intersection(q), "torus subgroup", "valuation grid"));
        out.push(Check::from_finding(
            check_lattice_inclusion(S_MAX, p)?,
            "lattices h_s and g_s",
            format!("s<={S_MAX}"),
        ));
        let ok = lattice_subset(LatticeKind::H, LatticeKind::H0Prime, 0, p)?
            && !lattice_subset(LatticeKind::H0Prime, LatticeKind::H, 0, p)?;
        out.push(Check::new(
            "h_0 strictly inside h_0'",
            "lattices h_s and g_s",
            "s=0",
            if ok { Status::Pass } else { Status::Fail },
            None,
        ));
        let name = "injectivity predicate = level-s membership";
        let range = format!("s<={S_MAX}");
        let fs: Option<Vec<Finding>> = (0..=S_MAX).map(|s| check_injectivity_consistency(s, p, q)).collect();
        out.push(match fs {
            Some(fs) => Check::aggregate(name, "injectivity discs", range, &fs),
            None => Check::skipped(name, "injectivity discs", range, "p = 2: 2 is not a unit"),
        });
        Ok(out)
    })?;
    Ok(Section {
        table: Some(table),
        checks,
    })
}

/// Every suite; tables are omitted and the checks concatenated in a fixed
/// order.
pub fn verify(params: &SuiteParams) -> Result<Section> {
    let suites: [fn(&SuiteParams) -> Result<Section>; 6] = [coeffs, action, decomp, rfunc, norms, lattices];
    let max_n = params.max_n.unwrap_or(Command::Verify.default_max_n(params.q()));
    let results: Vec<Result<Section>> = suites
        .par_iter()
        .enumerate()
        .map(|(i, f)| {
            // --max-n governs the action and decomposition ranges only.
            let mut per = params.clone();
            per.max_n = matches!(i, 1 | 2).then_some(max_n);
            f(&per)
        })
        .collect();
    let mut checks = Vec::new();
    for r in results {
        checks.extend(r?.checks);
    }
    Ok(Section { table: None, checks })
}

/// A configuration error for out-of-range inputs.
pub fn validate(cmd: Command, params: &SuiteParams) -> Result<()> {
    let q = params.q();
    let max_n = params.max_n.unwrap_or(cmd.default_max_n(q));
    let cap = match cmd {
        Command::Coeffs => 1_000_000,
        Command::Action | Command::Decomp | Command::Verify => 40,
        Command::Rfunc => 10_000_000,
        Command::Norms | Command::Lattices => u64::MAX,
    };
    if max_n > cap {
        return Err(LtvError::Config(format!("--max-n {max_n} exceeds {cap} for {}", cmd.name())));
    }
    if cmd == Command::Rfunc && max_n < 2 {
        return Err(LtvError::Config("rfunc needs --max-n >= 2".into()));
    }
    Ok(())
}
