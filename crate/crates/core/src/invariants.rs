//! Homological dimensions with certified infinitude, Gorensteinness, the
//! vanishing indicators for the singularity and defect categories, and the
//! aggregated classification report.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::algebra::Algebra;
use crate::auslander::{
    cm_free_refutation, verify_equivalence_exp, AusSummary, AuslanderAlgebra, GpGenerator, RefutationSearch,
};
use crate::error::{Error, Result};
use crate::gorenstein::{candidate_universe, GpContext, GpVerdict, DEFAULT_MAX_DEPTH};
use crate::modules::{decompose, dual, isomorphism, syzygy, ClassCache, ClassId, Module};

#[cfg(test)]
mod tests;

/// Three-valued answer; serializes as `true`, `false` or `"unknown"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TriBool {
    True,
    False,
    Unknown,
}

impl From<bool> for TriBool {
    fn from(b: bool) -> Self {
        if b {
            TriBool::True
        } else {
            TriBool::False
        }
    }
}

impl Serialize for TriBool {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            TriBool::True => s.serialize_bool(true),
            TriBool::False => s.serialize_bool(false),
            TriBool::Unknown => s.serialize_str("unknown"),
        }
    }
}

/// A summand X of Ω^depth(M) with X a summand of Ω^period(X), X not
/// projective: then Ω^i(M) is non-projective for every i >= depth.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct InfinityWitness {
    pub depth: usize,
    pub period: usize,
    pub module: String,
    pub dims: Vec<usize>,
    #[serde(skip)]
    pub start: Module,
    #[serde(skip)]
    pub summand: Module,
}

impl PartialEq for InfinityWitness {
    fn eq(&self, other: &Self) -> bool {
        self.depth == other.depth
            && self.period == other.period
            && self.dims == other.dims
            && self.module == other.module
    }
}

impl Eq for InfinityWitness {}

fn has_summand(m: &Module, x: &Module) -> Result<bool> {
    if m.is_zero() {
        return Ok(false);
    }
    for part in decompose(m)?.modules() {
        if part.dims() == x.dims() && isomorphism(&part, x)?.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

fn iterate_syzygy(m: &Module, k: usize) -> Module {
    let mut x = m.clone();
    for _ in 0..k {
        x = syzygy(&x).0;
    }
    x
}

impl InfinityWitness {
    /// Recomputes both syzygies and the summand relations.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidCertificate(format!("infinity witness: {msg}")));
        if self.period == 0 {
            return bad("zero period");
        }
        if self.summand.is_projective() || self.summand.is_zero() {
            return bad("summand is projective");
        }
        if !has_summand(&iterate_syzygy(&self.start, self.depth), &self.summand)? {
            return bad("not a summand of the stated syzygy");
        }
        if !has_summand(&iterate_syzygy(&self.summand, self.period), &self.summand)? {
            return bad("summand does not recur");
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum DimStatus {
    Finite(usize),
    CertifiedInfinite(Box<InfinityWitness>),
    /// the syzygy search stopped at this depth cap
    Unknown(usize),
}

impl DimStatus {
    pub fn is_finite(&self) -> bool {
        matches!(self, DimStatus::Finite(_))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, DimStatus::CertifiedInfinite(_))
    }

    pub fn finite(&self) -> Option<usize> {
        match self {
            DimStatus::Finite(d) => Some(*d),
            _ => None,
        }
    }
}

/// Projective dimension from the syzygy class graph: the longest path to a
/// non-projective class, or a certified cycle among non-projective classes.
pub fn projective_dimension(cache: &ClassCache, m: &Module, cap: usize) -> Result<DimStatus> {
    if m.is_zero() {
        return Ok(DimStatus::Finite(0));
    }
    let orbit = cache.syzygy_orbit(m, cap)?;
    let nonproj = |c: ClassId| !cache.is_projective(c);
    let mut succ: BTreeMap<ClassId, Vec<ClassId>> = BTreeMap::new();
    for &(x, y) in &orbit.edges {
        if nonproj(x) && nonproj(y) {
            succ.entry(x).or_default().push(y);
        }
    }
    let depth: HashMap<ClassId, usize> = orbit.classes.iter().copied().zip(orbit.depth.iter().copied()).collect();
    if let Some((x, period)) = find_cycle(&orbit.classes, &succ) {
        return Ok(DimStatus::CertifiedInfinite(Box::new(InfinityWitness {
            depth: depth[&x],
            period,
            module: cache.representative(x).label().to_string(),
            dims: cache.representative(x).dims().to_vec(),
            start: m.clone(),
            summand: cache.representative(x),
        })));
    }
    if !orbit.closed {
        return Ok(DimStatus::Unknown(cap));
    }
    // longest path in the acyclic non-projective part, from the start classes
    let mut memo: HashMap<ClassId, usize> = HashMap::new();
    fn longest(c: ClassId, succ: &BTreeMap<ClassId, Vec<ClassId>>, memo: &mut HashMap<ClassId, usize>) -> usize {
        if let Some(&v) = memo.get(&c) {
            return v;
        }
        let v = succ.get(&c).map_or(0, |ys| {
            ys.iter().map(|&y| 1 + longest(y, succ, memo)).max().unwrap_or(0)
        });
        memo.insert(c, v);
        v
    }
    let mut best: Option<usize> = None;
    for (&c, &d) in orbit.classes.iter().zip(&orbit.depth) {
        if d == 0 && nonproj(c) {
            let l = longest(c, &succ, &mut memo);
            best = Some(best.map_or(l, |b| b.max(l)));
        }
    }
    Ok(DimStatus::Finite(best.map_or(0, |l| l + 1)))
}

/// A vertex on a directed cycle and the cycle length, searching in `order`.
fn find_cycle(order: &[ClassId], succ: &BTreeMap<ClassId, Vec<ClassId>>) -> Option<(ClassId, usize)> {
    // 0 unvisited, 1 on stack, 2 done
    let mut state: HashMap<ClassId, u8> = HashMap::new();
    let mut stack: Vec<(ClassId, usize)> = Vec::new();
    for &root in order {
        if state.get(&root).copied().unwrap_or(0) != 0 {
            continue;
        }
        stack.push((root, 0));
        state.insert(root, 1);
        while let Some(&mut (c, ref mut i)) = stack.last_mut() {
            let next = succ.get(&c).and_then(|ys| ys.get(*i)).copied();
            *i += 1;
            match next {
                None => {
                    state.insert(c, 2);
                    stack.pop();
                }
                Some(y) => match state.get(&y).copied().unwrap_or(0) {
                    0 => {
                        state.insert(y, 1);
                        stack.push((y, 0));
                    }
                    1 => {
                        let pos = stack.iter().position(|&(z, _)| z == y).expect("on stack");
                        return Some((y, stack.len() - pos));
                    }
                    _ => {}
                },
            }
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Through the duality D: id(_A A) is pd over A^op of D(_A A), and id(A_A)
/// is pd over A of D(A_A).
pub fn injective_dimension(a: &Arc<Algebra>, side: Side, cap: usize) -> Result<DimStatus> {
    let (over, m) = match side {
        Side::Left => (a.opposite(), dual(&Module::regular(a))),
        Side::Right => (a.clone(), dual(&Module::regular(&a.opposite()))),
    };
    projective_dimension(&ClassCache::new(over), &m, cap)
}

pub fn global_dimension(a: &Arc<Algebra>, cap: usize) -> Result<DimStatus> {
    let cache = ClassCache::new(a.clone());
    let mut best = 0;
    let mut unknown = false;
    for v in 0..a.vertex_count() {
        match projective_dimension(&cache, &Module::simple(a, v), cap)? {
            DimStatus::Finite(d) => best = best.max(d),
            inf @ DimStatus::CertifiedInfinite(_) => return Ok(inf),
            DimStatus::Unknown(_) => unknown = true,
        }
    }
    Ok(if unknown {
        DimStatus::Unknown(cap)
    } else {
        DimStatus::Finite(best)
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GorensteinStatus {
    pub gorenstein: TriBool,
    pub left: DimStatus,
    pub right: DimStatus,
    /// false when both sides are finite but differ
    pub sides_agree: bool,
}

pub fn gorenstein_status(a: &Arc<Algebra>, cap: usize) -> Result<GorensteinStatus> {
    let left = injective_dimension(a, Side::Left, cap)?;
    let right = injective_dimension(a, Side::Right, cap)?;
    let (gorenstein, sides_agree) = match (&left, &right) {
        (DimStatus::Finite(l), DimStatus::Finite(r)) => (TriBool::True, l == r),
        _ if left.is_infinite() || right.is_infinite() => (TriBool::False, true),
        _ => (TriBool::Unknown, true),
    };
    Ok(GorensteinStatus {
        gorenstein,
        left,
        right,
        sides_agree,
    })
}

pub fn is_gorenstein(a: &Arc<Algebra>, cap: usize) -> Result<TriBool> {
    Ok(gorenstein_status(a, cap)?.gorenstein)
}

fn status_to_tribool(s: &DimStatus) -> TriBool {
    match s {
        DimStatus::Finite(_) => TriBool::True,
        DimStatus::CertifiedInfinite(_) => TriBool::False,
        DimStatus::Unknown(_) => TriBool::Unknown,
    }
}

/// The singularity category vanishes iff every module has finite projective
/// dimension, i.e. the global dimension is finite.
pub fn sg_trivial(a: &Arc<Algebra>, cap: usize) -> Result<TriBool> {
    Ok(status_to_tribool(&global_dimension(a, cap)?))
}

/// The defect category vanishes iff the algebra is Gorenstein.
pub fn defect_trivial(a: &Arc<Algebra>, cap: usize) -> Result<TriBool> {
    is_gorenstein(a, cap)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DifReport {
    pub defect_trivial: TriBool,
    pub aus_sg_trivial: TriBool,
    pub decided: bool,
    pub contradiction: bool,
}

impl DifReport {
    pub fn passed(&self) -> bool {
        self.decided && !self.contradiction
    }
}

/// The defect category of A vanishes exactly when the singularity category
/// of its Auslander algebra does: Gorenstein(A) iff gl.dim Aus(A) < ∞.
pub fn verify_dif(a: &Arc<Algebra>, gamma: &Arc<Algebra>, cap: usize) -> Result<DifReport> {
    let defect = defect_trivial(a, cap)?;
    let sg = sg_trivial(gamma, cap)?;
    Ok(dif_report(defect, sg))
}

fn dif_report(defect: TriBool, sg: TriBool) -> DifReport {
    let decided = defect != TriBool::Unknown && sg != TriBool::Unknown;
    DifReport {
        defect_trivial: defect,
        aus_sg_trivial: sg,
        decided,
        contradiction: decided && defect != sg,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Caps {
    /// depth for GP tests and syzygy orbits
    pub max_depth: usize,
    /// depth for projective and injective dimensions
    pub gl_dim_cap: usize,
    /// depth of the CM-free refutation search on Aus(A)
    pub refutation_depth: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            max_depth: DEFAULT_MAX_DEPTH,
            gl_dim_cap: DEFAULT_MAX_DEPTH,
            refutation_depth: 32,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GpEntry {
    pub module: String,
    pub dims: Vec<usize>,
    pub projective: bool,
    pub period: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AusReport {
    #[serde(flatten)]
    pub summary: AusSummary,
    pub cm_free_refutation_empty: bool,
    pub refutation: RefutationSearch,
    pub summands_to_projectives: bool,
    pub gl_dim: DimStatus,
    pub dif: DifReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassificationReport {
    pub algebra: String,
    pub dim: usize,
    pub vertices: usize,
    pub cm_finite: TriBool,
    pub gp_count: Option<usize>,
    pub gp_modules: Vec<GpEntry>,
    pub cm_free: TriBool,
    /// set when GP modules could not be enumerated and were sampled instead
    pub gp_sampler: Option<RefutationSearch>,
    pub cm_free_refutation_empty: Option<bool>,
    pub gorenstein: TriBool,
    pub inj_dim_left: DimStatus,
    pub inj_dim_right: DimStatus,
    pub gl_dim: DimStatus,
    pub sg_trivial: TriBool,
    pub defect_trivial: TriBool,
    /// the singularity and defect categories are represented only by these
    /// vanishing predicates
    pub category_indicators: &'static str,
    pub aus_summary: Option<AusReport>,
    /// set when the Auslander algebra could not be built
    pub aus_error: Option<String>,
    pub checks_passed: Vec<String>,
    pub checks_failed: Vec<String>,
    pub caps: Caps,
}

impl ClassificationReport {
    pub fn contradiction(&self) -> bool {
        !self.checks_failed.is_empty()
    }
}

/// Everything `classify` computes, with the objects behind the report.
pub struct Classification {
    pub report: ClassificationReport,
    pub certificates: Vec<crate::gorenstein::GpCertificate>,
    pub aus: Option<AuslanderAlgebra>,
}

struct Checks {
    passed: Vec<String>,
    failed: Vec<String>,
}

impl Checks {
    fn record(&mut self, name: &str, ok: bool) {
        if ok {
            self.passed.push(name.to_string());
        } else {
            self.failed.push(name.to_string());
        }
    }
}

pub fn classify(a: &Arc<Algebra>, caps: Caps) -> Result<ClassificationReport> {
    Ok(classify_full(a, caps)?.report)
}

/// Runs the whole pipeline: GP enumeration with audited certificates,
/// dimensions, the Auslander algebra and the theorem checks on it.
pub fn classify_full(a: &Arc<Algebra>, caps: Caps) -> Result<Classification> {
    let mut checks = Checks {
        passed: Vec::new(),
        failed: Vec::new(),
    };
    let ctx = GpContext::new(a);
    let universe = match candidate_universe(a) {
        Ok(u) => Some(u),
        Err(Error::NotEnumerable(_)) => None,
        Err(e) => return Err(e),
    };
    let mut gp_modules = Vec::new();
    let mut certificates = Vec::new();
    let mut gp: Option<Vec<Module>> = None;
    if let Some(universe) = &universe {
        let mut audit = true;
        let mut undecided = false;
        let mut found = Vec::new();
        for m in universe {
            match ctx.is_gp(m, caps.max_depth)? {
                GpVerdict::Yes(cert) => {
                    audit &= cert.validate().is_ok();
                    gp_modules.push(GpEntry {
                        module: m.label().to_string(),
                        dims: m.dims().to_vec(),
                        projective: m.is_projective(),
                        period: cert.period,
                    });
                    found.push(m.clone());
                    certificates.push(*cert);
                }
                GpVerdict::No(r) => audit &= r.validate().is_ok(),
                GpVerdict::Unknown { .. } => undecided = true,
            }
        }
        checks.record("certificatesValidate", audit);
        if !undecided {
            gp = Some(found);
        }
    }
    let cm_finite = if gp.is_some() { TriBool::True } else { TriBool::Unknown };
    let cm_free = match &gp {
        Some(list) => TriBool::from(list.iter().all(Module::is_projective)),
        None => TriBool::Unknown,
    };
    let gs = gorenstein_status(a, caps.gl_dim_cap)?;
    checks.record("injectiveDimensionsAgree", gs.sides_agree);
    let gl_dim = global_dimension(a, caps.gl_dim_cap)?;
    let sg = status_to_tribool(&gl_dim);
    let defect = gs.gorenstein;

    let mut aus = None;
    let mut aus_summary = None;
    let mut aus_error = None;
    let mut gp_sampler = None;
    if let Some(list) = &gp {
        let summands: Vec<Module> = (0..a.vertex_count())
            .map(|v| Module::projective(a, v))
            .chain(list.iter().filter(|m| !m.is_projective()).cloned())
            .collect();
        let generator = GpGenerator::from_summands(summands, a.vertex_count());
        match AuslanderAlgebra::new(generator) {
            Ok(g) => {
                let exp = verify_equivalence_exp(&g, caps.refutation_depth)?;
                checks.record(
                    "yonedaSummandsToProjectives",
                    exp.summands_to_projectives && exp.bijective,
                );
                checks.record("ausRefutationEmpty", exp.refutation.is_empty());
                let aus_gl = global_dimension(&g.gamma, caps.gl_dim_cap)?;
                let dif = dif_report(defect, status_to_tribool(&aus_gl));
                checks.record("difVanishing", !dif.contradiction);
                aus_summary = Some(AusReport {
                    summary: g.summary(),
                    cm_free_refutation_empty: exp.refutation.is_empty(),
                    refutation: exp.refutation,
                    summands_to_projectives: exp.summands_to_projectives && exp.bijective,
                    gl_dim: aus_gl,
                    dif,
                });
                aus = Some(g);
            }
            Err(e) => aus_error = Some(e.to_string()),
        }
    } else {
        // without an enumeration, sample syzygies of simples for GP modules
        gp_sampler = Some(cm_free_refutation(a, caps.refutation_depth)?);
    }
    let cm_free = match &gp_sampler {
        Some(search) if !search.is_empty() => TriBool::False,
        _ => cm_free,
    };
    if gl_dim.is_finite() && cm_free != TriBool::Unknown {
        checks.record("finiteGlobalDimensionIsCmFree", cm_free == TriBool::True);
    }

    let report = ClassificationReport {
        algebra: a.label().to_string(),
        dim: a.dim(),
        vertices: a.vertex_count(),
        cm_finite,
        gp_count: gp.as_ref().map(Vec::len),
        gp_modules,
        cm_free,
        cm_free_refutation_empty: gp_sampler.as_ref().map(RefutationSearch::is_empty),
        gp_sampler,
        gorenstein: gs.gorenstein,
        inj_dim_left: gs.left,
        inj_dim_right: gs.right,
        gl_dim,
        sg_trivial: sg,
        defect_trivial: defect,
        category_indicators: "vanishing predicates only",
        aus_summary,
        aus_error,
        checks_passed: checks.passed,
        checks_failed: checks.failed,
        caps,
    };
    Ok(Classification {
        report,
        certificates,
        aus,
    })
}
