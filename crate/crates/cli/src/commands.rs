//! One function per subcommand. Each takes a parsed [`Document`] and returns
//! an [`Outcome`]; preconditions that fail after a partial report keep the
//! report and set a nonzero status.

use forge_core::asd::{self, IsotropyData};
use forge_core::fanpoly::{
    einstein_verdict, index, is_fano, polytope_from_support, volume, AugmentedFan, EinsteinVerdict,
    SupportFunction,
};
use forge_core::lattice::{IVec2, IntMatrix};
use forge_core::metriclab::{futaki_quadrature, mul2, soliton_vector, MetricProblem};
use forge_core::reduction::{cohomology_table, is_admissible, is_nondegenerate, is_reduced, WeightMatrix};
use forge_core::sasaki::{
    analyze_fano_fan, canonical_root_lift, join, total_space_smoothness, JoinFactor, SasakiReport,
    VolumeSe,
};
use forge_core::Rational;
use num_bigint::BigInt;
use num_traits::One;
use serde_json::Value;

use crate::doc::{self, Document, FactorSpec, Support};
use crate::report::{float, Outcome, Report};
use crate::svg;
use crate::CliError;

pub const DEFAULT_TOLERANCE: f64 = 1e-8;

fn wrong_kind(doc: &Document, want: &str) -> CliError {
    CliError::Parse(format!("expected a {want} document, got {}", doc.kind()))
}

fn rational(r: &Rational) -> String {
    r.to_string()
}

fn point_list(points: &[IVec2]) -> Value {
    Value::Array(points.iter().map(|p| Value::String(p.to_string())).collect())
}

/// `Vol(M) = exact·(π/3)^3`, printed as `pπ³/q`.
pub fn volume_text(v: &VolumeSe) -> String {
    let r = &v.exact / Rational::from_integer(27.into());
    let num = if r.numer().is_one() { String::new() } else { r.numer().to_string() };
    if r.denom().is_one() {
        format!("{num}π³")
    } else {
        format!("{num}π³/{}", r.denom())
    }
}

pub fn build_fan(rays: &[Vec<BigInt>]) -> Result<AugmentedFan, CliError> {
    Ok(AugmentedFan::from_coordinates(rays)?)
}

fn fan_and_support(doc: &Document) -> Result<(AugmentedFan, SupportFunction), CliError> {
    let Document::AugmentedFan { rays, support, .. } = doc else {
        return Err(wrong_kind(doc, "augmented_fan"));
    };
    let fan = build_fan(rays)?;
    let h = match support {
        Support::Anticanonical => SupportFunction::constant(fan.len(), -1),
        Support::Values(v) => SupportFunction::new(v.clone()),
    };
    h.check_len(&fan)?;
    Ok((fan, h))
}

pub fn cmd_weights(doc: &Document) -> Result<Outcome, CliError> {
    let Document::WeightMatrix { rows } = doc else {
        return Err(wrong_kind(doc, "weight_matrix"));
    };
    let m = IntMatrix::from_big_rows(rows).map_err(|e| CliError::Parse(e.to_string()))?;
    let w = WeightMatrix::new(m)?;
    let mut r = Report::new("weights");
    r.push("k", w.k());
    r.push("n", w.n());
    let nondegenerate = is_nondegenerate(&w);
    r.push("nondegenerate", nondegenerate);
    r.push_int("d", &w.determinantal_divisor());
    for (cols, value) in w.minors().iter() {
        let name = cols.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        r.push_int(&format!("minor[{name}]"), value);
    }
    if !nondegenerate {
        r.push("admissible", false);
        return Ok(Outcome::failed(r, 2, "weight matrix is degenerate (a k x k minor vanishes)".into()));
    }
    let reduced = is_reduced(&w)?;
    let admissible = is_admissible(&w);
    r.push("reduced", reduced);
    r.push("admissible", admissible);
    if !admissible {
        return Ok(Outcome::failed(r, 2, "weight matrix is not admissible".into()));
    }
    if w.n() == w.k() + 2 && reduced {
        let table = cohomology_table(&w)?;
        r.push("b2", table.b2());
        r.push_int("torsion", &table.torsion_order);
        r.push("betti", table.betti.iter().map(|b| Value::from(*b)).collect::<Vec<_>>());
    }
    Ok(Outcome::ok(r))
}

/// Which invariant groups `cmd_fan` prints; all when none is selected.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FanFlags {
    pub einstein: bool,
    pub volume: bool,
    pub index: bool,
    pub smooth: bool,
    pub spin: bool,
}

impl FanFlags {
    fn all_if_none(self) -> Self {
        if self == FanFlags::default() {
            FanFlags { einstein: true, volume: true, index: true, smooth: true, spin: true }
        } else {
            self
        }
    }
}

pub fn cmd_fan(doc: &Document, flags: FanFlags) -> Result<Outcome, CliError> {
    let flags = flags.all_if_none();
    let (fan, h) = fan_and_support(doc)?;
    let mut r = Report::new("fan");
    r.push("rays", point_list(fan.rays()));
    r.push("fano", is_fano(&fan));
    if flags.volume {
        let poly = polytope_from_support::<Rational>(&fan, &h)?;
        r.push("vol_sigma", rational(&volume(&poly)));
    }
    let need_fano = flags.einstein || flags.index || flags.smooth || flags.spin;
    if need_fano && !is_fano(&fan) {
        return Ok(Outcome::failed(r, 2, forge_core::Error::NotFano.to_string()));
    }
    let verdict = if need_fano { Some(einstein_verdict(&fan)?) } else { None };
    if flags.einstein {
        let v = verdict.as_ref().expect("computed above");
        r.push("einstein", v.einstein == EinsteinVerdict::Einstein);
        r.push("symmetric", v.is_symmetric);
        r.push("special_symmetric", v.is_special_symmetric);
        r.push("barycenter", format!("({},{})", rational(&v.barycenter[0]), rational(&v.barycenter[1])));
    }
    if flags.index {
        r.push_int("index", &index(&fan)?);
    }
    if flags.smooth || flags.spin || (flags.volume && verdict.is_some()) {
        let se = analyze_fano_fan(&fan)?;
        if flags.smooth {
            let lift = total_space_smoothness(&fan, &canonical_root_lift(&fan)?)?;
            r.push("smooth", lift.smooth());
            r.push("cones_smooth", lift.cones_smooth);
            r.push("lattice_index", lift.lattice_index.map(|i| Value::String(i.to_string())).unwrap_or(Value::Null));
        }
        if flags.spin {
            r.push("spin", se.spin);
            r.push("b2", se.b2);
            r.push("diffeotype", se.diffeotype.to_string());
        }
        if flags.volume {
            push_volume(&mut r, &se);
        }
    }
    Ok(Outcome::ok(r))
}

fn push_volume(r: &mut Report, se: &SasakiReport) {
    match &se.volume {
        Some(v) => {
            r.push("vol_se", volume_text(v));
            r.push("vol_se_num", float(v.numeric));
        }
        None => r.push("vol_se", Value::Null),
    }
}

fn push_sasaki(r: &mut Report, se: &SasakiReport) {
    r.push("einstein", se.einstein == Some(EinsteinVerdict::Einstein));
    if let Some(i) = &se.index {
        r.push_int("index", i);
    }
    r.push("smooth", se.smooth);
    r.push("simply_connected", se.simply_connected);
    r.push("spin", se.spin);
    r.push("b2", se.b2);
    r.push("diffeotype", se.diffeotype.to_string());
    if let Some(o) = &se.ord {
        r.push_int("ord", o);
    }
    push_volume(r, se);
}

/// Runs the isotropy pipeline; the Fano fan document is returned alongside
/// the report when the data admits an ASD Einstein metric.
pub fn cmd_isotropy(doc: &Document) -> Result<(Outcome, Option<Document>), CliError> {
    let Document::IsotropyData { vectors } = doc else {
        return Err(wrong_kind(doc, "isotropy_data"));
    };
    let vs = vectors.iter().map(|v| IVec2::new(v[0].clone(), v[1].clone())).collect();
    let data = IsotropyData::new(vs)?;
    let report = asd::analyze(&data);
    let mut r = Report::new("isotropy");
    r.push("k", data.k());
    r.push("admits_asd_einstein", report.admits_asd_einstein);
    r.push("conditions_ab", report.conditions_ab);
    r.push(
        "stabilizer_orders",
        report.stabilizer_orders.iter().map(doc::int_value).collect::<Vec<_>>(),
    );
    r.push("b2_orbifold", report.b2_orbifold);
    let Some(fan) = report.fano_surface else {
        return Ok((Outcome::failed(r, 2, forge_core::Error::NotAsdEinstein.to_string()), None));
    };
    r.push("fan_rays", point_list(fan.rays()));
    r.push("b2_surface", fan.b2());
    push_sasaki(&mut r, &analyze_fano_fan(&fan)?);
    let fan_doc = Document::AugmentedFan {
        dim: 2,
        rays: fan.rays().iter().map(IVec2::to_vec).collect(),
        support: Support::Anticanonical,
    };
    Ok((Outcome::ok(r), Some(fan_doc)))
}

fn factor(spec: &FactorSpec) -> Result<JoinFactor, CliError> {
    match spec {
        FactorSpec::Sphere(m) => Ok(JoinFactor::sphere(*m)),
        FactorSpec::Explicit(f) => Ok(f.clone()),
        FactorSpec::Fan(rays) => {
            let se = analyze_fano_fan(&build_fan(rays)?)?;
            JoinFactor::from_report(&se).ok_or_else(|| CliError::Math("factor has no index".into()))
        }
    }
}

pub fn cmd_join(doc: &Document) -> Result<Outcome, CliError> {
    let Document::JoinSpec { factors, weights } = doc else {
        return Err(wrong_kind(doc, "join_spec"));
    };
    let (f1, f2) = (factor(&factors[0])?, factor(&factors[1])?);
    let j = join(&f1, &f2, &weights[0], &weights[1])?;
    let mut r = Report::new("join");
    if !j.reduced_by.is_one() {
        r.warnings.push(format!(
            "weights ({},{}) share the factor {}; using ({},{})",
            weights[0], weights[1], j.reduced_by, j.weights.0, j.weights.1
        ));
    }
    r.push("dim", j.dimension_out);
    r.push("b2", j.b2_out);
    r.push("smooth", j.smooth);
    r.push("einstein", j.einstein);
    r.push("positive", j.positive);
    r.push("spin", j.spin);
    r.push("weights", vec![doc::int_value(&j.weights.0), doc::int_value(&j.weights.1)]);
    r.push("reduced_by", doc::int_value(&j.reduced_by));
    r.push(
        "relative_indices",
        vec![doc::int_value(&j.relative_indices.0), doc::int_value(&j.relative_indices.1)],
    );
    r.push_int("index", &j.index_out);
    r.push_int("ord", &j.ord_out);
    Ok(Outcome::ok(r))
}

/// SVG of a fan document (or of the Fano fan of isotropy data).
pub fn cmd_render(doc: &Document) -> Result<String, CliError> {
    let (fan, h) = match doc {
        Document::IsotropyData { .. } => {
            let (outcome, fan_doc) = cmd_isotropy(doc)?;
            let fan_doc = fan_doc.ok_or_else(|| CliError::Math(outcome.message.unwrap_or_default()))?;
            fan_and_support(&fan_doc)?
        }
        _ => fan_and_support(doc)?,
    };
    let poly = polytope_from_support::<Rational>(&fan, &h)?;
    Ok(svg::render(&fan, poly.polygon()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricFlags {
    pub check_volume: bool,
    pub soliton: bool,
    pub tolerance: f64,
    pub grid: usize,
    pub cutoff: Option<f64>,
    pub points: usize,
}

impl Default for MetricFlags {
    fn default() -> Self {
        MetricFlags { check_volume: false, soliton: false, tolerance: DEFAULT_TOLERANCE, grid: 200, cutoff: None, points: 25 }
    }
}

/// Deterministic interior sample: weighted vertex averages with weights
/// from a Weyl sequence.
fn sample_points(p: &MetricProblem<f64>, count: usize) -> Vec<[f64; 2]> {
    let verts = p.polygon().vertices();
    let steps: Vec<f64> = (0..verts.len()).map(|i| ((i + 2) as f64).sqrt().fract()).collect();
    (1..=count)
        .map(|j| {
            let w: Vec<f64> = steps.iter().map(|s| 0.05 + (j as f64 * s).fract()).collect();
            let total: f64 = w.iter().sum();
            let mut y = [0.0, 0.0];
            for (v, wi) in verts.iter().zip(&w) {
                y[0] += v[0] * wi / total;
                y[1] += v[1] * wi / total;
            }
            y
        })
        .collect()
}

pub fn cmd_metric(doc: &Document, flags: MetricFlags) -> Result<Outcome, CliError> {
    let (fan, _) = fan_and_support(doc)?;
    let mut r = Report::new("metric");
    if !is_fano(&fan) {
        return Ok(Outcome::failed(r, 2, forge_core::Error::NotFano.to_string()));
    }
    let (volume_on, soliton_on) = if !flags.check_volume && !flags.soliton {
        (true, true)
    } else {
        (flags.check_volume, flags.soliton)
    };
    let p = MetricProblem::<f64>::from_fan(&fan)?;
    let exact = p.polygon().area();
    r.push("vol_exact", float(exact));
    r.push("tolerance", format!("{:e}", flags.tolerance));
    let (mut duality, mut hess) = (0.0f64, 0.0f64);
    for y in sample_points(&p, flags.points) {
        let x = p.grad_g(&y)?;
        let back = p.moment(&x)?;
        duality = duality.max((back[0] - y[0]).hypot(back[1] - y[1]));
        let prod = mul2(&p.hess_f(&x)?, &p.hess_g(&y)?);
        hess = hess.max((prod[0][0] - 1.0).abs().max(prod[0][1].abs()).max(prod[1][0].abs()).max((prod[1][1] - 1.0).abs()));
    }
    r.push("duality_points", flags.points);
    r.push("duality_max", format!("{duality:e}"));
    r.push("hess_identity_max", format!("{hess:e}"));
    let mut failures = Vec::new();
    if duality > flags.tolerance || hess > flags.tolerance {
        failures.push(format!("duality residual {duality:e} / {hess:e} above tolerance {:e}", flags.tolerance));
    }
    if volume_on {
        let cutoff = flags.cutoff.unwrap_or_else(|| p.default_cutoff());
        let num = p.numeric_volume(cutoff, flags.grid);
        let rel = (num - exact).abs() / exact;
        r.push("cutoff", float(cutoff));
        r.push("grid", flags.grid);
        r.push("vol_num", float(num));
        r.push("rel_err", format!("{rel:e}"));
        if rel >= 0.01 {
            failures.push(format!("quadrature volume off by {rel:e}"));
        }
    }
    if soliton_on {
        let q = futaki_quadrature(p.polygon())?;
        r.push("futaki", format!("({},{})", float(q[0]), float(q[1])));
        let s = soliton_vector(&p)?;
        r.push("soliton", format!("({},{})", float(s.b[0]), float(s.b[1])));
        r.push("soliton_iterations", s.iterations);
    }
    if failures.is_empty() {
        Ok(Outcome::ok(r))
    } else {
        Ok(Outcome::failed(r, 3, failures.join("; ")))
    }
}
