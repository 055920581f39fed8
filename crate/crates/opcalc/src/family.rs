//! Building the named families from command-line parameters.

use clap::{Args, ValueEnum};
use opcalc_core::families::{
    appell_l, appell_m, appell_matrix, appell_orthogonal, binomial_type, c_polynomial, laguerre_general, ortho_solve,
    sheffer, ward_family, ward_l_degree_one, OrthoSpec,
};
use opcalc_core::monomial::{monomiality_pair, MonomialityPair};
use opcalc_core::{CFactorial, ParamPoly, PowerSeries, Ring, TruncMatrix};

use crate::error::CliError;
use crate::json::CliRing;
use crate::literal::{parse_expr, parse_list, SeriesLiteral};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    Appell,
    AppellOrtho,
    Binomial,
    Sheffer,
    Ortho7,
    Ward,
    LaguerreGen,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Appell => "appell",
            FamilyKind::AppellOrtho => "appell-ortho",
            FamilyKind::Binomial => "binomial",
            FamilyKind::Sheffer => "sheffer",
            FamilyKind::Ortho7 => "ortho7",
            FamilyKind::Ward => "ward",
            FamilyKind::LaguerreGen => "laguerre-gen",
        }
    }
}

/// Family parameters. Every value is an expression in rationals and named
/// parameters; lists are comma separated.
#[derive(Args, Clone, Debug, Default, PartialEq)]
pub struct FamilyParams {
    /// Exponential coefficients f₀, f₁, … (or `exp`, `expm1`, `exp_poly:c1,c2,...`)
    #[arg(long)]
    pub f_egf: Option<String>,
    /// Exponential coefficients of the Sheffer factor g
    #[arg(long)]
    pub g_egf: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub f0: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub f1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub f2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub g0: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub g1: Option<String>,
    /// Ward sequence: `k`, `k2`, `poly:a1,a2,...` (cₖ = a₁k + a₂k² + …) or `q:<q>`
    #[arg(long)]
    pub c: Option<String>,
    /// Ward generating series, ordinary coefficients (or `exp`, `exp_poly:...`)
    #[arg(long)]
    pub g: Option<String>,
    /// Ward generating series by coefficients gₖ of tᵏ/f_c(k)
    #[arg(long)]
    pub g_cegf: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub y: Option<String>,
}

impl FamilyParams {
    /// Parameters used by the check suites when none are given.
    pub fn defaults(kind: FamilyKind) -> Self {
        let s = |v: &str| Some(v.to_string());
        let mut p = FamilyParams::default();
        match kind {
            FamilyKind::Appell => p.f_egf = s("2,1,-1,3,1/2,1,-2"),
            FamilyKind::AppellOrtho => (p.f0, p.f1, p.f2) = (s("1"), s("-2/5"), s("7/3")),
            FamilyKind::Binomial => p.f_egf = s("0,1,2,-1,3,1"),
            FamilyKind::Sheffer => (p.g_egf, p.f_egf) = (s("1,2,-1,3,1"), s("0,1,-1,2,1")),
            FamilyKind::Ortho7 => {
                (p.f0, p.f1, p.f2, p.g0, p.g1) = (s("3/2"), s("-1/3"), s("0"), s("2/5"), s("7/4"));
            }
            FamilyKind::Ward => (p.c, p.g) = (s("k2"), s("exp_poly:1/2,-1/3")),
            FamilyKind::LaguerreGen => (p.a, p.y) = (s("2"), s("1/2")),
        }
        p
    }

    /// `self` with unset fields taken from `base`.
    pub fn over(&self, base: &FamilyParams) -> FamilyParams {
        let pick = |a: &Option<String>, b: &Option<String>| a.clone().or_else(|| b.clone());
        FamilyParams {
            f_egf: pick(&self.f_egf, &base.f_egf),
            g_egf: pick(&self.g_egf, &base.g_egf),
            f0: pick(&self.f0, &base.f0),
            f1: pick(&self.f1, &base.f1),
            f2: pick(&self.f2, &base.f2),
            g0: pick(&self.g0, &base.g0),
            g1: pick(&self.g1, &base.g1),
            c: pick(&self.c, &base.c),
            g: pick(&self.g, &base.g),
            g_cegf: pick(&self.g_cegf, &base.g_cegf),
            a: pick(&self.a, &base.a),
            y: pick(&self.y, &base.y),
        }
    }

    fn fields(&self) -> [(&'static str, &Option<String>); 12] {
        [
            ("f-egf", &self.f_egf),
            ("g-egf", &self.g_egf),
            ("f0", &self.f0),
            ("f1", &self.f1),
            ("f2", &self.f2),
            ("g0", &self.g0),
            ("g1", &self.g1),
            ("c", &self.c),
            ("g", &self.g),
            ("g-cegf", &self.g_cegf),
            ("a", &self.a),
            ("y", &self.y),
        ]
    }

    /// Parameter names appearing in any literal.
    pub fn symbols(&self) -> Result<Vec<String>, CliError> {
        let mut out: Vec<String> = Vec::new();
        for (name, v) in self.fields() {
            let Some(v) = v else { continue };
            let polys = match name {
                "c" => match parse_c(v)? {
                    CSpec::Poly(cs) => cs,
                    CSpec::Q(q) => vec![q],
                    _ => Vec::new(),
                },
                "f-egf" | "g-egf" | "g" | "g-cegf" => match SeriesLiteral::parse(v)? {
                    SeriesLiteral::Exp | SeriesLiteral::ExpM1 => Vec::new(),
                    SeriesLiteral::Coeffs(cs) | SeriesLiteral::ExpPoly(cs) => cs,
                },
                _ => vec![parse_expr(v)?],
            };
            for p in polys {
                for (i, var) in p.vars().iter().enumerate() {
                    if p.terms().any(|(e, _)| e[i] > 0) && !out.contains(var) {
                        out.push(var.clone());
                    }
                }
            }
        }
        Ok(out)
    }

    fn expr<R: CliRing>(&self, flag: &str, v: &Option<String>) -> Result<R, CliError> {
        let v = v.as_ref().ok_or_else(|| CliError::Usage(format!("missing --{flag}")))?;
        R::lift(&parse_expr(v)?)
    }

    fn series<R: CliRing>(
        &self,
        flag: &str,
        v: &Option<String>,
        order: usize,
        coeffs: impl FnOnce(Vec<R>) -> Result<PowerSeries<R>, CliError>,
    ) -> Result<PowerSeries<R>, CliError> {
        let v = v.as_ref().ok_or_else(|| CliError::Usage(format!("missing --{flag}")))?;
        SeriesLiteral::parse(v)?.to_series(order, R::lift, coeffs)
    }

    fn egf<R: CliRing>(&self, flag: &str, v: &Option<String>, order: usize) -> Result<PowerSeries<R>, CliError> {
        self.series(flag, v, order, |cs| Ok(PowerSeries::from_egf(&cs)))
    }
}

/// The `--ring` flag: `auto`, `rational`, `params` or `params:<names>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingChoice {
    Auto,
    Rational,
    Params(Vec<String>),
}

/// The ring a computation actually runs in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingKind {
    Rational,
    Params,
}

impl std::str::FromStr for RingChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "auto" => Ok(RingChoice::Auto),
            "rational" => Ok(RingChoice::Rational),
            "params" => Ok(RingChoice::Params(Vec::new())),
            _ => match s.strip_prefix("params:") {
                Some(names) => Ok(RingChoice::Params(names.split(',').map(|n| n.trim().to_string()).filter(|n| !n.is_empty()).collect())),
                None => Err(format!("unknown ring `{s}`; expected auto, rational or params:<names>")),
            },
        }
    }
}

impl RingChoice {
    pub fn resolve(&self, symbols: &[String]) -> Result<RingKind, CliError> {
        match self {
            RingChoice::Auto if symbols.is_empty() => Ok(RingKind::Rational),
            RingChoice::Auto => Ok(RingKind::Params),
            RingChoice::Rational if symbols.is_empty() => Ok(RingKind::Rational),
            RingChoice::Rational => Err(CliError::Usage(format!("parameters {} need --ring params", symbols.join(", ")))),
            RingChoice::Params(names) => match symbols.iter().find(|s| !names.is_empty() && !names.contains(s)) {
                Some(s) => Err(CliError::Usage(format!("parameter `{s}` is not listed in --ring"))),
                None => Ok(RingKind::Params),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum CSpec {
    Ordinary,
    Squares,
    Poly(Vec<ParamPoly>),
    Q(ParamPoly),
}

pub fn parse_c(src: &str) -> Result<CSpec, CliError> {
    let s = src.trim();
    match s {
        "k" => return Ok(CSpec::Ordinary),
        "k2" => return Ok(CSpec::Squares),
        _ => {}
    }
    if let Some(rest) = s.strip_prefix("poly:") {
        return Ok(CSpec::Poly(parse_list(rest)?));
    }
    if let Some(rest) = s.strip_prefix("q:") {
        return Ok(CSpec::Q(parse_expr(rest)?));
    }
    Err(CliError::Usage(format!("unknown --c `{src}`; expected k, k2, poly:a1,a2,... or q:<q>")))
}

pub fn c_factorial<R: CliRing>(spec: &CSpec, len: usize) -> Result<CFactorial<R>, CliError> {
    Ok(match spec {
        CSpec::Ordinary => CFactorial::ordinary(len),
        CSpec::Squares => CFactorial::squares(len),
        CSpec::Poly(cs) => c_polynomial(&cs.iter().map(R::lift).collect::<Result<Vec<_>, _>>()?, len)?,
        CSpec::Q(q) => {
            let q = R::lift(q)?;
            if q.is_one() {
                return Err(CliError::Usage("q must differ from 1".into()));
            }
            CFactorial::q_numbers(&q, len)?
        }
    })
}

/// A closed-form operator and the conjugate it should equal.
#[derive(Clone, Debug)]
pub struct Closed<R: Ring> {
    pub name: &'static str,
    pub op: &'static str,
    pub matrix: TruncMatrix<R>,
}

/// A built family: its matrix, its operators and the closed forms the theory
/// predicts for them.
#[derive(Clone, Debug)]
pub struct Built<R: Ring> {
    pub kind: FamilyKind,
    pub a: TruncMatrix<R>,
    pub pair: MonomialityPair<R>,
    /// `"X"` for ordinary families, `"X_c"` for Ward families.
    pub shift_name: &'static str,
    pub closed: Vec<Closed<R>>,
}

fn closed<R: Ring>(name: &'static str, op: &'static str, matrix: TruncMatrix<R>) -> Closed<R> {
    Closed { name, op, matrix }
}

pub fn build<R: CliRing>(kind: FamilyKind, p: &FamilyParams, n: usize) -> Result<Built<R>, CliError> {
    let order = n + 1;
    let plain = |a: TruncMatrix<R>, closed: Vec<Closed<R>>| -> Result<Built<R>, CliError> {
        let pair = monomiality_pair(&a)?;
        Ok(Built { kind, a, pair, shift_name: "X", closed })
    };
    match kind {
        FamilyKind::Appell => {
            let f = p.egf::<R>("f-egf", &p.f_egf, order)?;
            let a = appell_matrix(&f, n)?;
            plain(a, vec![closed("X + h(D)", "M", appell_m(&f, n)?), closed("X - h(D)", "L", appell_l(&f, n)?)])
        }
        FamilyKind::AppellOrtho => {
            let fam = appell_orthogonal(&p.expr::<R>("f0", &p.f0)?, &p.expr("f1", &p.f1)?, &p.expr("f2", &p.f2)?, n)?;
            plain(fam.a, vec![closed("X - h0 I - h1 D", "L", fam.l)])
        }
        FamilyKind::Binomial => {
            let f = p.egf::<R>("f-egf", &p.f_egf, order)?;
            let bt = binomial_type(&f, n)?;
            plain(
                bt.b,
                vec![
                    closed("(1/f~')(D) X", "M", bt.m),
                    closed("f~(D)", "P", bt.p),
                    closed("(f~/f~')(D) X", "PM", bt.pm),
                ],
            )
        }
        FamilyKind::Sheffer => {
            let g = p.egf::<R>("g-egf", &p.g_egf, order)?;
            let f = p.egf::<R>("f-egf", &p.f_egf, order)?;
            let sh = sheffer(&g, &f, n)?;
            plain(
                sh.s,
                vec![
                    closed("(1/f~')(D) ((g'/g)(D) + X)", "M", sh.m),
                    closed("f~(D)", "P", sh.p),
                    closed("(f~/f~')(D) ((g'/g)(D) + X)", "PM", sh.pm),
                ],
            )
        }
        FamilyKind::Ortho7 => {
            let spec = OrthoSpec::new(
                p.expr::<R>("f0", &p.f0)?,
                p.expr("f1", &p.f1)?,
                p.expr("f2", &p.f2)?,
                p.expr("g0", &p.g0)?,
                p.expr("g1", &p.g1)?,
            );
            let sol = ortho_solve(&spec, n)?;
            let mut cl = Vec::new();
            if spec.f2.is_zero() {
                cl.push(closed("L for f2 = 0", "L", spec.l_closed(n)?));
                cl.push(closed("M for f2 = 0", "M", spec.m_closed(n)?));
                cl.push(closed("sum (-f1/(2g1))^k D^(k+1)", "P", spec.p_closed_sum(n)?));
            }
            Ok(Built { kind, a: sol.a, pair: sol.pair, shift_name: "X", closed: cl })
        }
        FamilyKind::Ward => {
            let cspec = parse_c(p.c.as_deref().ok_or_else(|| CliError::Usage("missing --c".into()))?)?;
            let c = c_factorial::<R>(&cspec, order)?;
            let g = match (&p.g, &p.g_cegf) {
                (Some(_), Some(_)) => return Err(CliError::Usage("give only one of --g and --g-cegf".into())),
                (Some(_), None) => p.series("g", &p.g, order, |cs| Ok(PowerSeries::new(cs)))?,
                (None, Some(_)) => p.series("g-cegf", &p.g_cegf, order, |cs| Ok(PowerSeries::from_cegf(&c, &cs)?))?,
                (None, None) => return Err(CliError::Usage("missing --g or --g-cegf".into())),
            };
            let fam = ward_family(&c, &g, n)?;
            let pair = fam.pair()?;
            let mut cl = vec![
                closed("X_c + h(D_c)", "M", fam.m.clone()),
                closed("X_c - h(D_c)", "L", fam.l.clone()),
                closed("D_c", "P", fam.p.clone()),
            ];
            if fam.h.coeffs().iter().skip(2).all(Ring::is_zero) {
                let gc = g.cegf_coeffs(&c)?;
                let zero = R::zero();
                let at = |k: usize| gc.get(k).unwrap_or(&zero);
                cl.push(closed("X_c - h0 I - h1 D_c", "L", ward_l_degree_one(&c, [at(0), at(1), at(2)], n)?));
            }
            Ok(Built { kind, a: fam.a, pair, shift_name: "X_c", closed: cl })
        }
        FamilyKind::LaguerreGen => {
            let lg = laguerre_general(&p.expr::<R>("a", &p.a)?, &p.expr("y", &p.y)?, n)?;
            let cl = vec![
                closed("X + a(1+y)I + D(a^2y(1+y) + 2ayX) + a^2y^2 D^2 X", "L", lg.l_closed),
                closed("L with a -> -a", "M", lg.m_closed),
                closed("sum (ay)^k D^(k+1)", "P", lg.p_closed),
            ];
            Ok(Built { kind, a: lg.a, pair: lg.pair, shift_name: "X", closed: cl })
        }
    }
}
