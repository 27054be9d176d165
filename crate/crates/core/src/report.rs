//! The analysis pipeline end to end, and the JSON reports it produces.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use serde_json::Value;

use crate::band::{BandReport, MulTable};
use crate::cw::{quiver_is_hasse, two_cover_check, verify_cw_theorem, CwReport};
use crate::error::{Error, Result};
use crate::intlattice::Int;
use crate::json;
use crate::presentation::{
    compute_presentation, hereditary_test, minimal_relations, tor1_table, verify_isomorphism, Certificates,
    Hereditary, IsoCertificate, PairRank, Presentation, Tor1Entry,
};
use crate::quiver::{build_quiver, lrb_shortcut_check, ArrowKind};
use crate::support::{connectivity, Side, SupportLattice, SupportLatticeJson};
use crate::zalgebra::{find_identity, jradical, lift_idempotents, mul_unchecked, nilpotency_index, AlgElem, LiftMethod, LiftMode};

/// Version tag carried by every report.
pub const SCHEMA: &str = "bandquiver-report/1";

/// Runs the whole construction: supports, idempotents, quiver, presentation.
pub fn present_band(t: &MulTable, mode: LiftMode, cutoff_override: Option<usize>) -> Result<Presentation> {
    t.require_band()?;
    let lat = SupportLattice::new(t)?;
    let idems = lift_idempotents(t, &lat, mode)?;
    let q = build_quiver(t, &lat)?;
    compute_presentation(t, &lat, &idems, &q, cutoff_override)
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessJson {
    pub support: String,
    pub side: Side,
    pub components: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct UnitJson {
    pub coeffs: Vec<Value>,
    pub display: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct NilpotencyJson {
    pub index: usize,
    pub height: usize,
    pub bound: String,
    pub within_bound: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalyzeReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub n: usize,
    pub names: Vec<String>,
    pub band: BandReport,
    pub clifford: bool,
    pub swallow_delete: bool,
    pub supports: SupportLatticeJson,
    pub connected: bool,
    pub witness: Option<WitnessJson>,
    pub unit: Option<UnitJson>,
    pub nilpotency: NilpotencyJson,
}

pub fn analyze(t: &MulTable) -> Result<AnalyzeReport> {
    let band = t.require_band()?;
    let lat = SupportLattice::new(t)?;
    let witness = connectivity(t, &lat)?.map(|w| WitnessJson {
        support: lat.name(w.support).to_string(),
        side: w.side,
        components: w.components.iter().map(|c| c.iter().map(|&b| t.name(b).to_string()).collect()).collect(),
    });
    let unit = find_identity(t)?.map(|u| UnitJson { coeffs: json::ints(u.coeffs()), display: u.display(t.names()).to_string() });
    let nil = nilpotency_index(t, &lat, &jradical(t, &lat))?;
    Ok(AnalyzeReport {
        schema: SCHEMA,
        command: "analyze",
        n: t.n(),
        names: t.names().to_vec(),
        band,
        clifford: t.check_clifford()?,
        swallow_delete: t.check_swallow_delete()?,
        supports: lat.to_json(),
        connected: witness.is_none(),
        witness,
        unit,
        nilpotency: NilpotencyJson {
            index: nil.index,
            height: lat.height(),
            bound: nil.bound.to_string(),
            within_bound: (nil.index as u128) <= nil.bound,
        },
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ArrowJson {
    pub name: String,
    pub source: String,
    pub target: String,
    pub label: String,
    pub kind: ArrowKind,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuiverJson {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PsiJson {
    pub path: String,
    pub image: String,
    pub coeffs: Vec<Value>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationJson {
    pub source: String,
    pub target: String,
    pub relation: String,
    pub coeffs: Vec<Value>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PresentReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub n: usize,
    pub names: Vec<String>,
    pub idempotents: LiftMethod,
    pub cutoff: usize,
    pub quiver: QuiverJson,
    pub psi: Vec<PsiJson>,
    pub truncation_rank: usize,
    pub kernel_rank: usize,
    pub quotient_rank: usize,
    pub kernel_basis: Vec<String>,
    pub relations: Vec<RelationJson>,
    pub relation_ranks: Vec<PairRank>,
    pub relations_generate: bool,
    pub certificates: Certificates,
    pub isomorphism: IsoCertificate,
    pub hereditary: Hereditary,
    pub tor1: Vec<Tor1Entry>,
    pub passed: bool,
}

fn quiver_json(p: &Presentation) -> QuiverJson {
    let names = &p.quiver.vertex_names;
    QuiverJson {
        vertices: names.clone(),
        arrows: p
            .quiver
            .arrows
            .iter()
            .map(|a| ArrowJson {
                name: a.name.clone(),
                source: names[a.source].clone(),
                target: names[a.target].clone(),
                label: p.table.name(a.label).to_string(),
                kind: a.kind,
            })
            .collect(),
    }
}

pub fn present(t: &MulTable, mode: LiftMode, cutoff_override: Option<usize>) -> Result<PresentReport> {
    let mut p = present_band(t, mode, cutoff_override)?;
    let iso = verify_isomorphism(&mut p)?;
    let rel = minimal_relations(&p)?;
    let hereditary = hereditary_test(&p)?;
    let tor1 = tor1_table(&p)?;
    let vnames = &p.quiver.vertex_names;
    let psi = p
        .algebra
        .basis()
        .iter()
        .zip(&p.images)
        .map(|(path, img)| PsiJson {
            path: p.path_name(path),
            image: img.display(t.names()).to_string(),
            coeffs: json::ints(img.coeffs()),
        })
        .collect();
    let relations = rel
        .relations
        .iter()
        .map(|r| RelationJson {
            source: vnames[r.source].clone(),
            target: vnames[r.target].clone(),
            relation: r.display.clone(),
            coeffs: json::ints(&r.coeffs),
        })
        .collect();
    let passed = p.certificates.all() && rel.generates && tor1.iter().all(Tor1Entry::agrees);
    Ok(PresentReport {
        schema: SCHEMA,
        command: "present",
        n: t.n(),
        names: t.names().to_vec(),
        idempotents: p.idems.method,
        cutoff: p.cutoff(),
        quiver: quiver_json(&p),
        psi,
        truncation_rank: p.algebra.rank(),
        kernel_rank: p.kernel.rank(),
        quotient_rank: p.algebra.rank() - p.kernel.rank(),
        kernel_basis: p.kernel.basis().iter().map(|g| p.combination(&p.algebra, g)).collect(),
        relations,
        relation_ranks: rel.ranks,
        relations_generate: rel.generates,
        certificates: p.certificates.clone(),
        isomorphism: iso,
        hereditary,
        tor1,
        passed,
    })
}

impl PresentReport {
    /// Plain-text summary: quiver arrows, relations and verdicts.
    pub fn render_text(&self) -> String {
        let mut s = format!("|B| = {}, cutoff L = {}\nquiver: {} vertices\n", self.n, self.cutoff, self.quiver.vertices.len());
        for a in &self.quiver.arrows {
            s.push_str(&format!("  {}: {} -> {}  (label {})\n", a.name, a.source, a.target, a.label));
        }
        if self.relations.is_empty() {
            s.push_str("relations: none\n");
        } else {
            s.push_str("relations:\n");
            for r in &self.relations {
                s.push_str(&format!("  {} = 0\n", r.relation));
            }
        }
        s.push_str(&format!(
            "hereditary: {}\ncertificates: {}\n",
            self.hereditary.hereditary,
            if self.passed { "pass" } else { "FAIL" }
        ));
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CwJson {
    pub schema: &'static str,
    pub command: &'static str,
    pub n: usize,
    pub arrows: Vec<String>,
    pub report: CwReport,
    pub ideal: String,
}

pub fn cw(t: &MulTable, mode: LiftMode) -> Result<CwJson> {
    t.require_left_regular()?;
    let p = present_band(t, mode, None)?;
    let report = verify_cw_theorem(&p)?;
    let arrows = p.quiver.arrow_names();
    let ideal = match &report.sign_vector {
        Some(s) => {
            let signed: Vec<String> =
                arrows.iter().zip(s).map(|(a, &x)| format!("{}{a}", if x < 0 { "-" } else { "+" })).collect();
            format!("I = (sum of 2-paths), signs [{}]", signed.join(", "))
        }
        None => "no sign vector".into(),
    };
    Ok(CwJson { schema: SCHEMA, command: "cw", n: t.n(), arrows, report, ideal })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub passed: bool,
}

struct Suite<'a> {
    prefix: &'a str,
    checks: Vec<Check>,
}

impl Suite<'_> {
    fn record(&mut self, name: &str, outcome: Result<bool>) -> bool {
        let (passed, detail) = match outcome {
            Ok(b) => (b, None),
            Err(e) => (false, Some(e.to_string())),
        };
        self.checks.push(Check { name: format!("{}/{name}", self.prefix), passed, detail });
        passed
    }
}

fn tau_multiplicative(t: &MulTable, lat: &SupportLattice) -> bool {
    (0..t.n()).all(|a| {
        (0..t.n()).all(|b| {
            let (ta, tb, tab) = (lat.tau_vector(a), lat.tau_vector(b), lat.tau_vector(t.mul(a, b)));
            tab.iter().zip(ta.iter().zip(&tb)).all(|(c, (x, y))| *c == x * y)
        })
    })
}

/// `ψ(u·v) = ψ(u)·ψ(v)` on random small combinations of basis paths.
fn random_multiplicativity(p: &Presentation, rng: &mut StdRng, trials: usize) -> Result<bool> {
    let d = p.algebra.rank();
    let n = p.n();
    let psi = |u: &[Int]| {
        let mut out = AlgElem::zero(n);
        for (c, img) in u.iter().zip(&p.images) {
            out = &out + &img.scale(c);
        }
        out
    };
    for _ in 0..trials {
        let u: Vec<Int> = (0..d).map(|_| Int::from(rng.gen_range(-3i64..=3))).collect();
        let v: Vec<Int> = (0..d).map(|_| Int::from(rng.gen_range(-3i64..=3))).collect();
        let uv = p.algebra.multiply(&u, &v)?;
        if psi(&uv) != mul_unchecked(&p.table, &psi(&u), &psi(&v)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Runs every applicable cross-check on one band. Failures are data.
pub fn verify_band(label: &str, t: &MulTable, mode: LiftMode, seed: u64) -> Vec<Check> {
    let mut s = Suite { prefix: label, checks: Vec::new() };
    if !s.record("band", t.require_band().map(|_| true)) {
        return s.checks;
    }
    let lat = match SupportLattice::new(t) {
        Ok(l) => l,
        Err(e) => {
            s.record("supports", Err(e));
            return s.checks;
        }
    };
    s.record("clifford", t.check_clifford());
    s.record("swallow_delete", t.check_swallow_delete());
    s.record("tau_multiplicative", Ok(tau_multiplicative(t, &lat)));
    let connected = connectivity(t, &lat).map(|w| w.is_none());
    let unit = find_identity(t).map(|u| u.is_some());
    s.record("unit_iff_connected", match (&connected, unit) {
        (Ok(c), Ok(u)) => Ok(*c == u),
        (Err(e), _) => Err(e.clone()),
        (_, Err(e)) => Err(e),
    });
    s.record("brown_bound", nilpotency_index(t, &lat, &jradical(t, &lat)).map(|_| true));
    if connected != Ok(true) {
        return s.checks;
    }
    let idems = lift_idempotents(t, &lat, mode);
    if !s.record("idempotents", idems.as_ref().map(|_| true).map_err(Clone::clone)) {
        return s.checks;
    }
    let idems = idems.unwrap();
    let q = build_quiver(t, &lat);
    if !s.record("quiver", q.as_ref().map(|_| true).map_err(Clone::clone)) {
        return s.checks;
    }
    let q = q.unwrap();
    let pres = compute_presentation(t, &lat, &idems, &q, None);
    if !s.record("presentation", pres.as_ref().map(|_| true).map_err(Clone::clone)) {
        return s.checks;
    }
    let mut p = pres.unwrap();
    s.record("admissible", Ok(p.certificates.admissible()));
    s.record("isomorphism", verify_isomorphism(&mut p).map(|c| c.passed()));
    s.record("tor1_agreement", tor1_table(&p).map(|tab| tab.iter().all(Tor1Entry::agrees)));
    s.record("relations_generate", minimal_relations(&p).map(|r| r.generates));
    s.record("hereditary_consistent", hereditary_test(&p).map(|_| true));
    let mut rng = StdRng::seed_from_u64(seed);
    s.record("random_multiplicativity", random_multiplicativity(&p, &mut rng, 8));
    if t.is_left_regular() {
        let pairs: Vec<(usize, usize)> =
            (0..lat.m()).flat_map(|x| (0..lat.m()).map(move |y| (x, y))).filter(|&(x, y)| lat.lt(x, y)).collect();
        s.record(
            "lrb_shortcut",
            pairs.iter().try_fold(true, |acc, &(x, y)| lrb_shortcut_check(t, &lat, x, y).map(|b| acc && b)),
        );
        if matches!(two_cover_check(t, &lat), Ok(true)) && quiver_is_hasse(&q, &lat) {
            s.record("cw_theorem", verify_cw_theorem(&p).map(|r| r.passed()));
        }
    }
    s.checks
}

pub fn verify(inputs: &[(String, MulTable)], mode: LiftMode, seed: u64) -> VerifyReport {
    let checks: Vec<Check> = inputs.iter().flat_map(|(label, t)| verify_band(label, t, mode, seed)).collect();
    let passed = checks.iter().all(|c| c.passed);
    VerifyReport { schema: SCHEMA, command: "verify", seed, checks, passed }
}

/// Serializes a report with a trailing newline; output is byte-stable.
pub fn to_json_string<T: Serialize>(report: &T) -> Result<String> {
    serde_json::to_string_pretty(report)
        .map(|s| s + "\n")
        .map_err(|e| Error::Malformed(format!("serialization failed: {e}")))
}
