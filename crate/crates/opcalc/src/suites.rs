//! Identity check suites behind `opcalc check`.
//!
//! Each suite checks identities that hold exactly and reports the first
//! mismatching entry of any that does not. Observations that are not pass/fail
//! identities, such as comparisons with alternative displayed forms, are
//! emitted as notes.

use clap::ValueEnum;
use opcalc_core::diffop::{
    decompose, dn_mul, mul_in_rep, neg_decompose, pincherle_d, pincherle_x, reconstruct, reconstruct_band, reconstruct_neg,
    s_table, s_table_from_rep,
};
use opcalc_core::families::{
    appell_l, appell_m, appell_matrix, appell_orthogonal, binomial_type, c_polynomial, jackson_derivative, laguerre_general,
    ortho_solve, riordan_matrix, sheffer, ward_basis, ward_family, ward_l_degree_one, ward_to_hermite, OrthoSpec,
};
use opcalc_core::monomial::{dual_functional_from_l, monomiality_pair, MonomialityPair};
use opcalc_core::series::{q_number, row_egf, series_of_matrix};
use opcalc_core::{binomial, factorial, Basis, CFactorial, MatrixIndex, ParamPoly, Poly, PowerSeries, Rational, Ring, TruncMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::CliError;
use crate::family::{build, Built, FamilyKind, FamilyParams, RingChoice, RingKind};
use crate::json::CliRing;
use crate::render;

type M = TruncMatrix<Rational>;
type S = PowerSeries<Rational>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Pincherle,
    DiffopRoundtrip,
    Monomiality,
    Appell,
    Binomial,
    Sheffer,
    Ortho7,
    Ward,
    Examples,
    All,
}

impl Suite {
    pub const EACH: [Suite; 9] = [
        Suite::Pincherle,
        Suite::DiffopRoundtrip,
        Suite::Monomiality,
        Suite::Appell,
        Suite::Binomial,
        Suite::Sheffer,
        Suite::Ortho7,
        Suite::Ward,
        Suite::Examples,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Pincherle => "pincherle",
            Suite::DiffopRoundtrip => "diffop-roundtrip",
            Suite::Monomiality => "monomiality",
            Suite::Appell => "appell",
            Suite::Binomial => "binomial",
            Suite::Sheffer => "sheffer",
            Suite::Ortho7 => "ortho7",
            Suite::Ward => "ward",
            Suite::Examples => "examples",
            Suite::All => "all",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: &'static str,
    pub identity: String,
    pub pass: bool,
    /// First mismatching `(row, column)` of a failed matrix identity.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub at: Option<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SuiteOutput {
    pub reports: Vec<Report>,
    pub notes: Vec<String>,
}

impl SuiteOutput {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(|r| r.pass)
    }
}

/// What a `check` invocation asked for.
#[derive(Clone, Debug)]
pub struct SuiteCtx {
    pub order: usize,
    pub seed: u64,
    pub family: Option<FamilyKind>,
    pub params: FamilyParams,
    pub ring: RingChoice,
}

impl SuiteCtx {
    pub fn new(order: usize) -> Self {
        SuiteCtx { order, seed: 0, family: None, params: FamilyParams::default(), ring: RingChoice::Auto }
    }

    /// Symbolic computations are capped at this order.
    fn symbolic_order(&self) -> usize {
        self.order.min(16)
    }

    fn params_for(&self, kind: FamilyKind) -> FamilyParams {
        self.params.over(&FamilyParams::defaults(kind))
    }
}

struct Out {
    suite: &'static str,
    inner: SuiteOutput,
}

impl Out {
    fn new(suite: Suite) -> Self {
        Out { suite: suite.name(), inner: SuiteOutput::default() }
    }

    fn push(&mut self, identity: impl Into<String>, pass: bool, at: Option<(usize, usize)>, detail: Option<String>) {
        self.inner.reports.push(Report { suite: self.suite, identity: identity.into(), pass, at, detail });
    }

    fn holds(&mut self, identity: impl Into<String>, pass: bool) {
        self.push(identity, pass, None, None);
    }

    fn holds_with(&mut self, identity: impl Into<String>, failure: Option<String>) {
        self.push(identity, failure.is_none(), None, failure);
    }

    /// Matrix equality on the common exact rows.
    fn eq<R: Ring>(&mut self, identity: impl Into<String>, lhs: &TruncMatrix<R>, rhs: &TruncMatrix<R>) {
        let at = lhs.first_mismatch(rhs);
        let detail = at.map(|(r, c)| {
            let show = |m: &TruncMatrix<R>| if r < m.valid_rows() { m.get(r, c).to_string() } else { "-".into() };
            format!("left {} vs right {}", show(lhs), show(rhs))
        });
        self.push(identity, at.is_none(), at, detail);
    }

    fn note(&mut self, s: impl Into<String>) {
        self.inner.notes.push(s.into());
    }
}

pub fn run_suite(suite: Suite, ctx: &SuiteCtx) -> Result<SuiteOutput, CliError> {
    let mut out = Out::new(suite);
    match suite {
        Suite::Pincherle => pincherle(&mut out, ctx)?,
        Suite::DiffopRoundtrip => diffop(&mut out, ctx)?,
        Suite::Monomiality => monomiality(&mut out, ctx)?,
        Suite::Appell => appell(&mut out, ctx)?,
        Suite::Binomial => binomial_suite(&mut out, ctx)?,
        Suite::Sheffer => sheffer_suite(&mut out, ctx)?,
        Suite::Ortho7 => ortho7(&mut out, ctx)?,
        Suite::Ward => ward(&mut out, ctx)?,
        Suite::Examples => examples(&mut out, ctx)?,
        Suite::All => {
            let mut all = SuiteOutput::default();
            for s in Suite::EACH {
                let o = run_suite(s, ctx)?;
                all.reports.extend(o.reports);
                all.notes.extend(o.notes);
            }
            return Ok(all);
        }
    }
    Ok(out.inner)
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.gen_range(-9..=9), rng.gen_range(1..=6))
}

fn random_nonzero(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let q = random_rational(rng);
        if !q.is_zero() {
            return q;
        }
    }
}

/// Index-`bound` matrix with random entries; diagonal set by `diag` when the
/// bound is zero.
fn random_matrix(rng: &mut ChaCha8Rng, bound: i64, n: usize, diag: Option<bool>) -> M {
    let mut rows = Vec::with_capacity(n);
    for j in 0..n {
        let width = (j as i64 - bound + 1).max(0) as usize;
        let mut row: Vec<Rational> = (0..width).map(|_| random_rational(rng)).collect();
        match diag {
            Some(true) => row[j] = Rational::from(1),
            Some(false) => row[j] = random_nonzero(rng),
            None => {}
        }
        if bound < 0 && j as i64 - bound < width as i64 + 1 {
            let top = (j as i64 - bound) as usize;
            if row[top].is_zero() {
                row[top] = random_nonzero(rng);
            }
        }
        rows.push(row);
    }
    M::from_rows(bound, rows).expect("rows respect the bound")
}

fn basis(b: Basis, n: usize) -> M {
    M::basis(b, n)
}

fn pincherle(out: &mut Out, ctx: &SuiteCtx) -> Result<(), CliError> {
    let n = ctx.order;
    let x = basis(Basis::X, n);
    let d = basis(Basis::D, n);
    out.eq("X*D - D*X = I", &x.mul(&d)?.sub(&d.mul(&x)?), &M::identity(n));
    for j in 1..=10usize {
        let dj = d.pow(j)?;
        let rhs = d.pow(j - 1)?.scale(&Rational::from(j as i64));
        out.eq(format!("X*D^{j} - D^{j}*X = {j}*D^{}", j - 1), &x.mul(&dj)?.sub(&dj.mul(&x)?), &rhs);
        let xj = x.pow(j)?;
        let rhs = x.pow(j - 1)?.scale(&Rational::from(j as i64));
        out.eq(format!("X^{j}*D - D*X^{j} = {j}*X^{}", j - 1), &xj.mul(&d)?.sub(&d.mul(&xj)?), &rhs);
    }
    let mut first = None;
    'outer: for k in 0..=8usize {
        for j in 0..=8usize {
            let lhs = x.pow(k)?.mul(&d.pow(j)?)?.scale(&factorial(j).recip().expect("nonzero"));
            let mut rhs = M::zero(0, n);
            for i in 0..=k.min(j) {
                let c = binomial(k, i) * factorial(j - i).recip().expect("nonzero");
                rhs = rhs.add(&d.pow(j - i)?.mul(&x.pow(k - i)?)?.scale(&c));
            }
            if let Some((r, c)) = lhs.first_mismatch(&rhs) {
                first = Some(format!("k = {k}, j = {j}: mismatch at ({r}, {c})"));
                break 'outer;
            }
        }
    }
    out.holds_with("X^k*D^j/j! = sum_i C(k,i) D^(j-i)/(j-i)! X^(k-i), k, j <= 8", first);

    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let a = random_matrix(&mut rng, 0, n.min(16), Some(false));
    let m = a.valid_rows();
    let rows_of = |p: &M| p.row_polys();
    let us = rows_of(&a);
    let ax = rows_of(&a.mul(&basis(Basis::X, m))?);
    out.holds("rows of A*X are t*u_k", ax.iter().zip(&us).all(|(l, u)| *l == u * &Poly::t()));
    let axh = rows_of(&a.mul(&basis(Basis::Xhat, m))?);
    let lowered = |u: &Poly<Rational>| (u - &Poly::constant(u.coeff(0))).div_t().expect("zero constant term");
    out.holds("rows of A*Xhat are (u_k - u_k(0))/t", axh.iter().zip(&us).all(|(l, u)| *l == lowered(u)));
    let ad = rows_of(&a.mul(&basis(Basis::D, m))?);
    out.holds("rows of A*D are u_k'", ad.iter().zip(&us).all(|(l, u)| *l == u.derivative()));
    let da = rows_of(&basis(Basis::D, m).mul(&a)?);
    out.holds(
        "row k of D*A is k*u_(k-1)",
        (1..da.len()).all(|k| da[k] == us[k - 1].scale(&Rational::from(k as i64))),
    );
    let u = random_matrix(&mut rng, -1, m, None);
    let inv = a.invert()?;
    let ur = M::product(&[&inv, &u, &a])?;
    out.eq("A*(A^-1*U*A) = U*A", &a.mul(&ur)?, &u.mul(&a)?);
    let ul = M::product(&[&a, &u, &inv])?;
    out.eq("(A*U*A^-1)*A = A*U", &ul.mul(&a)?, &a.mul(&u)?);
    Ok(())
}

fn diffop(out: &mut Out, ctx: &SuiteCtx) -> Result<(), CliError> {
    let n = ctx.order;
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let ts = [Rational::from(0), Rational::from(1), rat(-2, 3)];
    let mut round = None;
    let mut gf = None;
    for i in 0..20 {
        let a = random_matrix(&mut rng, 0, n, Some(i % 2 == 0));
        let rep = decompose(&a)?;
        if let Some((r, c)) = reconstruct(&rep, n)?.first_mismatch(&a) {
            round.get_or_insert(format!("matrix {i}: mismatch at ({r}, {c})"));
        }
        for t in &ts {
            let lhs = rep.egf_at(t);
            let rhs = S::x(n).scale(&t.negated()).exp()?.mul(&row_egf(&a, t));
            if let Some(k) = lhs.first_mismatch(&rhs) {
                gf.get_or_insert(format!("matrix {i}, t = {t}: coefficient {k}"));
            }
        }
    }
    out.holds_with("reconstruct(decompose(A)) = A for 20 random index-0 matrices", round);
    out.holds_with("sum p_k(t) x^k/k! = exp(-tx) sum u_k(t) x^k/k! at t in {0, 1, -2/3}", gf);

    let small = n.min(12);
    let mut prod = None;
    for i in 0..20 {
        let a = random_matrix(&mut rng, 0, small, None);
        let b = random_matrix(&mut rng, 0, small, None);
        if mul_in_rep(&a, &decompose(&b)?)? != decompose(&a.mul(&b)?)? {
            prod.get_or_insert(format!("pair {i}"));
        }
    }
    out.holds_with("mul_in_rep(A, rep(B)) = rep(A*B) for 20 random pairs", prod);

    let a = random_matrix(&mut rng, 0, small, Some(false));
    let rep = decompose(&a)?;
    out.holds("s_{k,i} from rows equals s_{k,i} from p_k", s_table(&a, small)? == s_table_from_rep(&rep));
    let x = basis(Basis::X, small);
    let d = basis(Basis::D, small);
    out.eq("X*A - A*X = sum D^k/k! p_(k+1)(X)", &x.mul(&a)?.sub(&a.mul(&x)?), &reconstruct(&pincherle_x(&rep), small)?);
    out.eq("A*D - D*A = sum D^k/k! p_k'(X)", &a.mul(&d)?.sub(&d.mul(&a)?), &reconstruct(&pincherle_d(&rep), small)?);
    let mut dn = None;
    for k in 0..5usize {
        let scaled = d.pow(k)?.scale(&factorial(k).recip().expect("nonzero")).mul(&a)?.with_index_bound(0)?;
        let direct = decompose(&scaled)?;
        if direct.ps() != &dn_mul(&rep, k).ps()[..direct.len()] {
            dn.get_or_insert(format!("n = {k}"));
        }
    }
    out.holds_with("rep of (D^n/n!)*A has k-th polynomial C(k,n) p_(k-n)", dn);

    let mut band = None;
    let mut displayed_ok = 0;
    let mut first_displayed = None;
    for i in 0..20 {
        let width = 1 + (i % 2) as i64;
        let r = random_matrix(&mut rng, -width, small, None);
        let rep = neg_decompose(&r)?;
        let rebuilt = reconstruct_neg(&rep, small)?;
        if let Some((row, col)) = rebuilt.first_mismatch(&r) {
            band.get_or_insert(format!("matrix {i} (index -{width}): mismatch at ({row}, {col})"));
        }
        let lower = reconstruct(&rep.lower, small)?;
        let limited = lower.add(&reconstruct_band(&rep, small, Some(width as usize))?);
        match limited.first_mismatch(&r) {
            None => displayed_ok += 1,
            Some(at) => {
                first_displayed.get_or_insert((i, width, at));
            }
        }
    }
    out.holds_with("negative-index band reconstructs exactly with upper sum over all k >= 1", band);
    let mut note = format!("upper sum truncated at k = m reproduces {displayed_ok} of 20 random band matrices");
    if let Some((i, w, (r, c))) = first_displayed {
        note.push_str(&format!("; first failure: matrix {i} (index -{w}) at ({r}, {c})"));
    }
    out.note(note);
    Ok(())
}

fn monomiality_reports<R: CliRing>(out: &mut Out, built: &Built<R>, label: &str) -> Result<(), CliError> {
    let pair = &built.pair;
    let a = &built.a;
    let s = built.shift_name;
    out.eq(format!("{label}: A*M = {s}*A"), &a.mul(&pair.m)?, &pair.shift.mul(a)?);
    let dname = if s == "X" { "D" } else { "D_c" };
    out.eq(format!("{label}: A*P = {dname}*A"), &a.mul(&pair.p)?, &pair.deriv.mul(a)?);
    out.eq(
        format!("{label}: L*Q - Q*L = I with Q = A*{dname}*A^-1"),
        &pair.l.mul(&pair.conj_d)?.sub(&pair.conj_d.mul(&pair.l)?),
        &TruncMatrix::identity(a.valid_rows()),
    );
    if s == "X" {
        out.eq(format!("{label}: (A^-1*J*A)*P = I"), &pair.q.mul(&pair.p)?, &TruncMatrix::identity(a.valid_rows()));
    }
    for c in &built.closed {
        let target = match c.op {
            "M" => pair.m.clone(),
            "P" => pair.p.clone(),
            "L" => pair.l.clone(),
            "PM" => pair.p.mul(&pair.m)?,
            _ => continue,
        };
        out.eq(format!("{label}: {} = {}", c.op, c.name), &c.matrix, &target);
    }
    Ok(())
}

fn biorthogonality<R: Ring>(pair: &MonomialityPair<R>, a: &TruncMatrix<R>, top: usize) -> Result<Option<String>, CliError> {
    for n in 0..=top {
        let u = a.row_poly(n)?;
        for m in 0..=top {
            let phi = dual_functional_from_l(&pair.l, m, &u)?;
            let expect = if m == n { R::one() } else { R::zero() };
            if phi != expect {
                return Ok(Some(format!("phi_{m}(u_{n}) = {phi}")));
            }
        }
    }
    Ok(None)
}

fn monomiality(out: &mut Out, ctx: &SuiteCtx) -> Result<(), CliError> {
    let kinds: Vec<FamilyKind> = match ctx.family {
        Some(k) => vec![k],
        None => FamilyKind::value_variants().to_vec(),
    };
    for kind in kinds {
        let params = if ctx.family.is_some() { ctx.params_for(kind) } else { FamilyParams::defaults(kind) };
        let symbols = params.symbols()?;
        match ctx.ring.resolve(&symbols)? {
            RingKind::Rational => {
                let b = build::<Rational>(kind, &params, ctx.order)?;
                monomiality_reports(out, &b, kind.name())?;
                family_notes(out, &b, ctx.family.is_some());
                if matches!(kind, FamilyKind::AppellOrtho | FamilyKind::Binomial) {
                    let top = 12.min(ctx.order.saturating_sub(2));
                    let miss = biorthogonality(&b.pair, &b.a, top)?;
                    out.holds_with(format!("{}: phi_m(u_n) = delta(m, n) for m, n <= {top}", kind.name()), miss);
                }
            }
            RingKind::Params => {
                let b = build::<ParamPoly>(kind, &params, ctx.symbolic_order())?;
                monomiality_reports(out, &b, kind.name())?;
                family_notes(out, &b, ctx.family.is_some());
            }
        }
    }
    Ok(())
}

fn family_notes<R: Ring>(out: &mut Out, b: &Built<R>, show: bool) {
    if show {
        for k in 0..b.a.valid_rows().min(4) {
            out.note(format!("u_{k} = {}", render::poly(&b.a.row_polys()[k])));
        }
    }
}

fn appell(out: &mut Out, ctx: &SuiteCtx) -> Result<(), CliError> {
    let n = ctx.order;
    let f = PowerSeries::from_egf(&[2, 1, -1, 3, 0, 1, 1, -2, 5, 1].map(Rational::from));
    let f = PowerSeries::new({
        let mut c = f.coeffs().to_vec();
        c.resize(n + 1, Rational::from(0));
        c
    });
    let a = appell_matrix(&f, n)?;
    let pair = monomiality_pair(&a)?;
    out.eq("M = X + h(D)", &appell_m(&f, n)?, &pair.m);
    out.eq("L = X - h(D)", &appell_l(&f, n)?, &pair.l);
    out.eq("L + M = 2X", &pair.l.add(&pair.m), &basis(Basis::X, n).scale(&Rational::from(2)));
    out.eq("P = D", &pair.p, &basis(Basis::D, n));
    out.eq("L*Q - Q*L = I with Q = A*D*A^-1", &pair.l.mul(&pair.conj_d)?.sub(&pair.conj_d.mul(&pair.l)?), &M::identity(n));

    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let top = 20.min(n.saturating_sub(2));
    for trial in 0..3 {
        let (f0, f1, f2) = if trial == 0 { (rat(1, 1), rat(-2, 5), rat(7, 3)) } else { (random_nonzero(&mut rng), random_rational(&mut rng), random_rational(&mut rng)) };
        let fam = appell_orthogonal(&f0, &f1, &f2, top + 2)?;
        let us = fam.a.row_polys();
        let mut miss = None;
        for k in 1..=top {
            let lhs = &(&(&us[k] * &Poly::t()) + &us[k - 1].scale(&fam.h1.scaled(&Rational::from(k as i64)))) + &us[k].scale(&fam.h0);
            if lhs != us[k + 1] {
                miss = Some(format!("n = {k}"));
                break;
            }
        }
        out.holds_with(format!("u_(n+1) = (t + h0) u_n + n h1 u_(n-1) for n <= {top}, (f0, f1, f2) = ({f0}, {f1}, {f2})"), miss);
        out.holds(format!("L tridiagonal for (f0, f1, f2) = ({f0}, {f1}, {f2})"), fam.l.is_banded(-1, 1));
    }
    let cubic = PowerSeries::exp_poly(&[rat(0, 1), rat(0, 1), rat(1, 1)], n.min(16) + 1);
    let l = appell_l(&cubic, n.min(16))?;
    out.holds("h of degree 2 gives a non-tridiagonal L", !l.is_banded(-1, 1));
    Ok(())
}

fn binomial_suite(out: &mut Out, ctx: &SuiteCtx) -> Result<(), CliError> {
    let n = ctx.order.min(16);
    let f = PowerSeries::from_egf(&(0..=n as i64).map(|k| Rational::from(if k == 0 { 0 } else { 1 + (k * 7) % 5 - 2 })).collect::<Vec<_>>());
    let f = PowerSeries::new({
        let mut c = f.coeffs().to_vec();
        c[1] = Rational::from(1);
        c
    });
    let bt = binomial_type(&f, n)?;
    let pair = monomiality_pair(&bt.b)?;
    out.eq("M = (1/f~')(D) X", &bt.m, &pair.m);
    out.eq("P = f~(D)", &bt.p, &pair.p);
    out.eq("P*M = (f~/f~')(D) X", &bt.pm, &pair.p.mul(&pair.m)?);
    let us = bt.b.row_polys();
    let (t, x) = (Rational::from(1), Rational::from(2));
    let top = 10.min(n - 1);
    let miss = (0..=top).find(|&k| {
        let rhs = (0..=k).fold(Rational::from(0), |acc, j| acc + binomial(k, j) * us[j].eval(&t) * us[k - j].eval(&x));
        us[k].eval(&(&t + &x)) != rhs
    });
    out.holds_with(format!("u_n(t + x) = sum C(n,k) u_k(t) u_(n-k)(x) for n <= {top}"), miss.map(|k| format!("n = {k}")));
    let em1 = S::exponential(n + 1).sub(&S::one(n + 1));
    let touchard = binomial_type(&em1, n)?;
    let u2 = touchard.b.row_poly(2)?;
    out.holds("f = e^z - 1 gives u_2 = t^2 + t", render::poly(&u2) == "t^2 + t");
    Ok(())
}

fn sheffer_suite(out: &mut Out, ctx: &SuiteCtx) -> Result<(), CliError> {
    let n = ctx.order.min(16);
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut series = |delta: bool| {
        let mut c: Vec<Rational> = (0..=n).map(|_| random_rational(&mut rng)).collect();
        if delta {
            c[0] = Rational::from(0);
        }
        c[usize::from(delta)] = Rational::from(1);
        S::new(c)
    };
    let (g, f, g2, f2) = (series(false), series(true), series(false), series(true));
    let sh = sheffer(&g, &f, n)?;
    let pair = monomiality_pair(&sh.s)?;
    out.eq("M = (1/f~')(D) ((g'/g)(D) + X)", &sh.m, &pair.m);
    out.eq("P = f~(D)", &sh.p, &pair.p);
    out.eq("P*M = (f~/f~')(D) ((g'/g)(D) + X)", &sh.pm, &pair.p.mul(&pair.m)?);
    let r = riordan_matrix(&g, &f, n)?;
    out.eq("F*R*F^-1 = S with R = C_f g(Xhat)", &M::product(&[&basis(Basis::F, n), &r, &basis(Basis::Finv, n)])?, &sh.s);

    let s = sh.s.mul(&sheffer(&g2, &f2, n)?.s)?;
    out.holds("product of Sheffer matrices has index 0 and unit diagonal", s.index_of() == MatrixIndex::Finite(0) && (0..n).all(|k| s.get(k, k).is_one()));
    let pp = monomiality_pair(&s)?.p;
    let phi = S::new((0..n).map(|m| pp.get(m, 0) * factorial(m).recip().expect("nonzero")).collect());
    let is_delta = phi.coeff(0).is_zero() && phi.coeff(1).is_one();
    let agrees = pp.agrees_with(&series_of_matrix(&phi, &basis(Basis::D, n))?);
    out.holds("P of the product is a delta series of D", is_delta && agrees);
    Ok(())
}

fn ortho7(out: &mut Out, ctx: &SuiteCtx) -> Result<(), CliError> {
    let n = ctx.order;
    let params = ctx.params_for(FamilyKind::Ortho7);
    let lift = |v: &Option<String>| -> Result<Rational, CliError> {
        let p = crate::literal::parse_expr(v.as_deref().unwrap_or("0"))?;
        Rational::lift(&p)
    };
    let spec = OrthoSpec::new(lift(&params.f0)?, lift(&params.f1)?, lift(&params.f2)?, lift(&params.g0)?, lift(&params.g1)?);
    let label = format!(
        "(f0, f1, f2, g0, g1) = ({}, {}, {}, {}, {})",
        spec.f0, spec.f1, spec.f2, spec.g0, spec.g1
    );
    let sol = ortho_solve(&spec, n)?;
    out.eq(format!("A*B = H*A, {label}"), &sol.a.mul(&sol.b)?, &sol.h.mul(&sol.a)?);
    out.holds(format!("L tridiagonal, {label}"), sol.pair.l.is_banded(-1, 1));
    if spec.f2.is_zero() {
        out.eq(format!("L closed form, {label}"), &spec.l_closed(n)?, &sol.pair.l);
        out.eq(format!("M closed form, {label}"), &spec.m_closed(n)?, &sol.pair.m);
        out.eq(format!("P = sum (-f1/(2g1))^k D^(k+1), {label}"), &spec.p_closed_sum(n)?, &sol.pair.p);
        match spec.p_closed_exp(n)?.first_mismatch(&sol.pair.p) {
            None => out.note(format!("P = D exp(-f1/(2g1) D) also agrees, {label}")),
            Some((r, c)) => out.note(format!("P differs from D exp(-f1/(2g1) D) at ({r}, {c}), {label}")),
        }
    }
    if ctx.params.f2.is_none() {
        let quad = OrthoSpec::new(rat(1, 1), rat(2, 3), rat(1, 5), rat(-1, 2), rat(3, 1));
        let sol = ortho_solve(&quad, n)?;
        out.eq("A*B = H*A with f2 = 1/5", &sol.a.mul(&sol.b)?, &sol.h.mul(&sol.a)?);
        out.holds("L tridiagonal with f2 = 1/5", sol.pair.l.is_banded(-1, 1));
    }
    Ok(())
}

fn pp(name: &str) -> ParamPoly {
    ParamPoly::variable(name)
}

fn ward(out: &mut Out, ctx: &SuiteCtx) -> Result<(), CliError> {
    let n = ctx.symbolic_order();
    let (z, y) = (pp("z"), pp("y"));
    let c = CFactorial::<ParamPoly>::squares(n + 1);
    let g = PowerSeries::exp_poly(&[z.clone(), y.clone()], n + 1);
    let fam = ward_family(&c, &g, n)?;
    let pair = fam.pair()?;
    let id = TruncMatrix::<ParamPoly>::identity(n);
    out.eq("X_c*D_c - D_c*X_c = I (c_k = k^2)", &fam.x_c.mul(&fam.d_c)?.sub(&fam.d_c.mul(&fam.x_c)?), &id);
    out.eq("L - X_c = -(M - X_c)", &pair.l.sub(&fam.x_c), &pair.m.sub(&fam.x_c).neg());
    out.eq("M = X_c + h(D_c)", &fam.m, &pair.m);
    out.eq("L = X_c - h(D_c)", &fam.l, &pair.l);
    let gc = g.cegf_coeffs(&c)?;
    let cl = ward_l_degree_one(&c, [&gc[0], &gc[1], &gc[2]], n)?;
    out.eq("L = X_c - h0 I - h1 D_c for deg h = 1", &cl, &pair.l);
    out.holds("L tridiagonal for deg h = 1", cl.is_banded(-1, 1));

    let coef = gc[1].times(&gc[1]).scaled(&Rational::from(2)).minus(&gc[0].times(&gc[2])).scaled(&Rational::new(1, 2));
    let us = fam.a.row_polys();
    let top = 12.min(n - 2);
    let mut miss = None;
    for k in 1..=top {
        let integral = Poly::new(
            std::iter::once(ParamPoly::zero())
                .chain(us[k].coeffs().iter().enumerate().map(|(j, a)| a.scaled(&Rational::new(1, j as i64 + 1))))
                .collect(),
        );
        let lhs = &(&us[k - 1].scale(&coef.scaled(&Rational::from((k * k) as i64))) - &us[k].scale(&gc[1]))
            + &us[k + 1].scale_rational(&Rational::new(1, k as i64 + 1));
        if lhs != integral {
            miss = Some(format!("k = {k}"));
            break;
        }
    }
    out.holds_with(format!("((2g1^2 - g0g2)/(2g0^2)) k^2 u_(k-1) - (g1/g0) u_k + u_(k+1)/(k+1) = J_c u_k for k <= {top}"), miss);

    let t_matrix = TruncMatrix::product(&[&fam.a, &TruncMatrix::basis(Basis::X, n), &fam.a.invert()?])?;
    out.holds("multiplication by t in the u_k basis is not tridiagonal (c_k = k^2)", !t_matrix.is_banded(-1, 1));

    let nr = ctx.order.min(16);
    let cubic = c_polynomial(&[rat(1, 1), rat(1, 1), rat(1, 1)], nr + 1)?;
    let (d_c, _) = ward_basis(&cubic, nr)?;
    let a = series_of_matrix(&S::x(nr + 1).scale(&Rational::from(-1)).exp()?, &d_c)?;
    out.holds("c_k = k + k^2 + k^3: L = A*X*A^-1 is not tridiagonal", !monomiality_pair(&a)?.l.is_banded(-1, 1));

    let (d, x) = ward_basis(&CFactorial::<Rational>::ordinary(nr), nr)?;
    out.holds("c_k = k gives D_c = D and X_c = X", d == basis(Basis::D, nr) && x == basis(Basis::X, nr));

    let q = Rational::from(2);
    let cq = CFactorial::q_numbers(&q, 11)?;
    let (dq, _) = ward_basis(&cq, 11)?;
    let jmiss = (0..=10).find(|&k| {
        let tk = Poly::monomial(Rational::from(1), k);
        jackson_derivative(&tk, &q).ok() != dq.row_poly(k).ok()
    });
    out.holds_with("Jackson q-derivative of t^k equals row k of D_c, q = 2, k <= 10", jmiss.map(|k| format!("k = {k}")));

    let wh = ward_to_hermite(&c, &g, n)?;
    out.holds("u_k recovered from the rows of f(D)", wh.u == us);
    Ok(())
}

fn examples(out: &mut Out, ctx: &SuiteCtx) -> Result<(), CliError> {
    let n = ctx.symbolic_order();
    let (z, y) = (pp("z"), pp("y"));
    let c = CFactorial::<ParamPoly>::squares(n + 1);
    let g = PowerSeries::exp_poly(&[z.clone(), y.clone()], n + 1);
    let fam = ward_family(&c, &g, n)?;
    let rows = fam.a.row_polys();
    let expect = ["1", "t + z", "t^2 + 4*z*t + 2*z^2 + 4*y", "t^3 + 9*z*t^2 + 18*z^2*t + 36*y*t + 6*z^3 + 36*z*y"];
    for (k, e) in expect.iter().enumerate() {
        let got = render::poly(&rows[k]);
        let detail = (got != *e).then(|| format!("got {got}"));
        out.holds_with(format!("ward k^2: u_{k} = {e}"), detail);
    }
    let pair = fam.pair()?;
    let id = TruncMatrix::<ParamPoly>::identity(n);
    let m2 = fam.x_c.add(&id.scale(&z)).add(&fam.d_c.scale(&y.scaled(&Rational::from(2))));
    out.eq("ward k^2: M = X_c + zI + 2y D_c", &pair.m, &m2);
    let m1 = fam.x_c.add(&id.scale(&z)).add(&fam.d_c.scale(&y));
    match pair.m.first_mismatch(&m1) {
        None => out.note("ward k^2: M = X_c + zI + y D_c also agrees"),
        Some((r, col)) => out.note(format!(
            "ward k^2: M differs from X_c + zI + y D_c at ({r}, {col}): computed {}, displayed form {}",
            pair.m.get(r, col),
            m1.get(r, col)
        )),
    }

    let nl = ctx.order.min(16);
    for a in [2i64, 3, 5] {
        let av = Rational::from(a);
        let lg = laguerre_general(&av, &av.recip().expect("nonzero"), nl)?;
        let (x, d, i) = (basis(Basis::X, nl + 1), basis(Basis::D, nl + 1), M::identity(nl + 1));
        let one_a = Rational::from(1 + a);
        let jacobi = i
            .scale(&one_a)
            .add(&d.mul(&i.scale(&one_a).add(&x.scale(&Rational::from(2))))?)
            .add(&M::product(&[&d, &d, &x])?)
            .add(&x);
        out.eq(format!("laguerre: a = {a}, y = 1/a: L = (1+a)I + D((1+a)I + 2X) + D^2 X + X"), &lg.pair.l, &jacobi);
    }
    let ns = ctx.order.min(14);
    let lg = laguerre_general(&pp("a"), &pp("y"), ns)?;
    out.eq("laguerre: symbolic L closed form", &lg.l_closed, &lg.pair.l);
    out.eq("laguerre: symbolic M = L with a -> -a", &lg.m_closed, &lg.pair.m);
    out.eq("laguerre: symbolic P = sum (ay)^k D^(k+1)", &lg.p_closed, &lg.pair.p);
    let lg0 = laguerre_general(&Rational::from(3), &Rational::from(0), nl)?;
    out.eq("laguerre: y = 0 gives L = X + aI", &lg0.pair.l, &basis(Basis::X, nl).add(&M::identity(nl).scale(&Rational::from(3))));

    let (f1, f2) = (rat(1, 3), rat(-2, 5));
    for q in [Rational::from(2), rat(1, 3)] {
        let cq = CFactorial::q_numbers(&q, nl + 1)?;
        let two = q_number(&q, 2);
        let h1 = (Rational::from(2) * &f2 - &two * &f1 * &f1) * two.recip().expect("nonzero");
        let g = PowerSeries::exp_poly(&[f1.clone(), &h1 * &rat(1, 2)], nl + 1);
        let fam = ward_family(&cq, &g, nl)?;
        let m = fam.x_c.add(&M::identity(nl).scale(&f1)).add(&fam.d_c.scale(&h1));
        let gc = g.cegf_coeffs(&cq)?;
        out.holds(format!("q-ward: q = {q}: g has c-exponential coefficients f1 = {f1}, f2 = {f2}"), gc[1] == f1 && gc[2] == f2);
        out.eq(format!("q-ward: q = {q}: M = X_c + f1 I + ((2f2 - [2]f1^2)/[2]) D_c"), &fam.pair()?.m, &m);
    }

    let ap = appell_matrix(&S::one(4), 4)?;
    out.holds("appell f = 1: u_3(2) = 8", ap.row_poly(3)?.eval(&Rational::from(2)) == Rational::from(8));
    let e1 = ward_family(&CFactorial::<Rational>::squares(4), &S::one(4), 3)?;
    out.holds("ward k^2 at z = y = 0: u_2(3) = 9", e1.a.row_poly(2)?.eval(&Rational::from(3)) == Rational::from(9));
    let bt = binomial_type(&S::exponential(4).sub(&S::one(4)), 3)?;
    out.holds("binomial f = e^z - 1: u_2(1) = 2", bt.b.row_poly(2)?.eval(&Rational::from(1)) == Rational::from(2));
    Ok(())
}
