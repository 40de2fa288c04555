//! Gorenstein-projective modules: the totally reflexive test with periodic
//! certificates, an independent graph oracle, enumeration of indecomposables
//! and the stability check for complexes.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::algebra::Algebra;
use crate::complexes::{biexact, Complex, ComplexSummary};
use crate::error::{Error, Result};
use crate::exactfield::Mat;
use crate::modules::{
    biduality_map, decompose, direct_sum, direct_sum_maps, ext, find_isomorphism, isomorphism, projective_cover, star,
    syzygy, ClassCache, ClassId, Module, ModuleMap,
};


pub const DEFAULT_MAX_DEPTH: usize = 64;

/// Evidence that a module is Gorenstein-projective.
///
/// The module splits as N + Q with Q projective. `window` is a piece of the
/// complete resolution of N with terms P^j = Q_((-j) mod p) for
/// -(p+2) <= j <= p+2, where Q_k is the projective cover of the k-th syzygy
/// N_k. Every differential is N_k's cover followed by the inclusion of N_k
/// as the syzygy of N_(k-1), except at the seam, which passes through
/// `seam: N -> N_p`. The window repeats with period p, so its checks cover
/// the whole unbounded complex.
#[derive(Clone, Debug)]
pub struct GpCertificate {
    pub module: Module,
    pub nonprojective: Module,
    pub projective_part: Module,
    pub period: usize,
    pub window: Complex,
    pub seam: ModuleMap,
    /// the same data for N* over the opposite algebra
    pub dual_period: usize,
    pub dual_seam: ModuleMap,
    /// Ext^i(M, A) and Ext^i(M*, A^op) were checked for 1 <= i <= ext_depth
    pub ext_depth: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase", tag = "kind")]
pub enum RefutationReason {
    ExtNonvanishing { degree: usize, dim: usize },
    BidualityFails { rank_deficit: usize },
    StarSideExtNonvanishing { degree: usize, dim: usize },
}

#[derive(Clone, Debug)]
pub struct GpRefutation {
    pub module: Module,
    pub reason: RefutationReason,
}

#[derive(Clone, Debug)]
pub enum GpVerdict {
    Yes(Box<GpCertificate>),
    No(GpRefutation),
    /// the syzygy orbit or the seam search ran past the depth cap
    Unknown {
        depth: usize,
    },
}

impl GpVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, GpVerdict::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, GpVerdict::No(_))
    }
}

/// Serializable audit data for a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CertificateSummary {
    pub module: String,
    pub dims: Vec<usize>,
    pub period: usize,
    pub dual_period: usize,
    pub ext_depth: usize,
    pub window: ComplexSummary,
    /// seam blocks, one row-major matrix per vertex
    pub seam: Vec<Vec<Vec<u32>>>,
}

fn matrix_rows(m: &Mat) -> Vec<Vec<u32>> {
    (0..m.rows()).map(|r| m.row(r).to_vec()).collect()
}

/// Shared caches for many GP tests over one algebra.
pub struct GpContext {
    algebra: Arc<Algebra>,
    regular: Module,
    op_regular: Module,
    cache: ClassCache,
    op_cache: ClassCache,
    ext_memo: Mutex<HashMap<ClassId, usize>>,
    op_ext_memo: Mutex<HashMap<ClassId, usize>>,
}

impl GpContext {
    pub fn new(algebra: &Arc<Algebra>) -> Self {
        let op = algebra.opposite();
        Self {
            algebra: algebra.clone(),
            regular: Module::regular(algebra),
            op_regular: Module::regular(&op),
            cache: ClassCache::new(algebra.clone()),
            op_cache: ClassCache::new(op),
            ext_memo: Mutex::new(HashMap::new()),
            op_ext_memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn cache(&self) -> &ClassCache {
        &self.cache
    }

    fn ext1_regular(&self, op: bool, c: ClassId) -> Result<usize> {
        let (cache, memo, reg) = if op {
            (&self.op_cache, &self.op_ext_memo, &self.op_regular)
        } else {
            (&self.cache, &self.ext_memo, &self.regular)
        };
        if let Some(&d) = memo.lock().unwrap_or_else(|e| e.into_inner()).get(&c) {
            return Ok(d);
        }
        let d = ext(&cache.representative(c), reg, 1)?;
        memo.lock().unwrap_or_else(|e| e.into_inner()).insert(c, d);
        Ok(d)
    }

    /// First depth at which a summand X of the iterated syzygies has
    /// Ext^1(X, A) != 0, and whether the orbit closed within the cap.
    fn ext_scan(&self, op: bool, m: &Module, max_depth: usize) -> Result<(Option<usize>, bool)> {
        let cache = if op { &self.op_cache } else { &self.cache };
        let orbit = cache.syzygy_orbit(m, max_depth)?;
        for (&c, &d) in orbit.classes.iter().zip(&orbit.depth) {
            if self.ext1_regular(op, c)? != 0 {
                return Ok((Some(d), orbit.closed));
            }
        }
        Ok((None, orbit.closed))
    }

    /// Decides Gorenstein-projectivity by total reflexivity, and on success
    /// builds a periodic certificate.
    pub fn is_gp(&self, m: &Module, max_depth: usize) -> Result<GpVerdict> {
        if !m.same_algebra(&self.regular) {
            return Err(Error::AlgebraMismatch);
        }
        let max_depth = max_depth.max(1);
        let no = |reason| {
            Ok(GpVerdict::No(GpRefutation {
                module: m.clone(),
                reason,
            }))
        };

        let (fail, closed) = self.ext_scan(false, m, max_depth)?;
        if let Some(d) = fail {
            let degree = d + 1;
            return no(RefutationReason::ExtNonvanishing {
                degree,
                dim: ext(m, &self.regular, degree)?,
            });
        }
        let deficit = biduality_deficit(m)?;
        if deficit != 0 {
            return no(RefutationReason::BidualityFails { rank_deficit: deficit });
        }
        let ms = star(m)?;
        let (fail, op_closed) = self.ext_scan(true, &ms, max_depth)?;
        if let Some(d) = fail {
            let degree = d + 1;
            return no(RefutationReason::StarSideExtNonvanishing {
                degree,
                dim: ext(&ms, &self.op_regular, degree)?,
            });
        }
        if !closed || !op_closed {
            return Ok(GpVerdict::Unknown { depth: max_depth });
        }

        let (nonprojective, projective_part) = split_projective_part(m)?;
        let Some((period, seam)) = find_seam(&self.cache, &nonprojective, max_depth)? else {
            return Ok(GpVerdict::Unknown { depth: max_depth });
        };
        let ns = star(&nonprojective)?;
        let Some((dual_period, dual_seam)) = find_seam(&self.op_cache, &ns, max_depth)? else {
            return Ok(GpVerdict::Unknown { depth: max_depth });
        };
        let window = periodic_window(&nonprojective, period, &seam)?;
        Ok(GpVerdict::Yes(Box::new(GpCertificate {
            module: m.clone(),
            nonprojective,
            projective_part,
            period,
            window,
            seam,
            dual_period,
            dual_seam,
            ext_depth: max_depth,
        })))
    }
}

/// One-off GP test; use a [`GpContext`] for many modules over one algebra.
pub fn is_gp(m: &Module, max_depth: usize) -> Result<GpVerdict> {
    GpContext::new(m.algebra()).is_gp(m, max_depth)
}

/// dim M + dim M** - 2 rank(M -> M**): zero exactly when the evaluation map
/// is an isomorphism.
fn biduality_deficit(m: &Module) -> Result<usize> {
    let ev = biduality_map(m)?;
    let r = ev.rank();
    Ok(ev.source().dim() + ev.target().dim() - 2 * r)
}

/// M = N + Q with Q the sum of the projective indecomposable summands.
fn split_projective_part(m: &Module) -> Result<(Module, Module)> {
    let alg = m.algebra();
    let (proj, nonproj): (Vec<Module>, Vec<Module>) =
        decompose(m)?.modules().into_iter().partition(Module::is_projective);
    Ok((
        direct_sum(alg, &nonproj).with_label(format!("N({})", m.label())),
        direct_sum(alg, &proj).with_label(format!("Q({})", m.label())),
    ))
}

fn class_multiset(cache: &ClassCache, m: &Module) -> Result<Vec<(ClassId, usize)>> {
    if m.is_zero() {
        return Ok(Vec::new());
    }
    cache.classify(m)
}

/// Least p <= max_depth with Ω^p N ≅ N, with an explicit isomorphism.
fn find_seam(cache: &ClassCache, n: &Module, max_depth: usize) -> Result<Option<(usize, ModuleMap)>> {
    if n.is_zero() {
        return Ok(Some((1, ModuleMap::zero(n, &syzygy(n).0))));
    }
    let target = class_multiset(cache, n)?;
    let mut x = n.clone();
    for p in 1..=max_depth {
        x = syzygy(&x).0;
        if x.dims() != n.dims() || class_multiset(cache, &x)? != target {
            continue;
        }
        let iso = find_isomorphism(n, &x)?
            .ok_or_else(|| Error::InvalidCertificate("equal class multisets without an isomorphism".into()))?;
        return Ok(Some((p, iso)));
    }
    Ok(None)
}

/// Covers Q_k -> Ω^k N and inclusions Ω^(k+1) N -> Q_k for k < p.
struct SyzygyChain {
    covers: Vec<ModuleMap>,
    inclusions: Vec<ModuleMap>,
}

fn syzygy_chain(n: &Module, p: usize) -> SyzygyChain {
    let mut x = n.clone();
    let mut covers = Vec::new();
    let mut inclusions = Vec::new();
    for _ in 0..p {
        covers.push(projective_cover(&x));
        let (next, inc) = syzygy(&x);
        inclusions.push(inc);
        x = next;
    }
    SyzygyChain { covers, inclusions }
}

fn periodic_window(n: &Module, p: usize, seam: &ModuleMap) -> Result<Complex> {
    let chain = syzygy_chain(n, p);
    let lo = -(p as i64 + 2);
    let hi = p as i64 + 2;
    let slot = |j: i64| (-j).rem_euclid(p as i64) as usize;
    let terms: Vec<Module> = (lo..=hi).map(|j| chain.covers[slot(j)].source().clone()).collect();
    let diffs: Vec<ModuleMap> = (lo..hi)
        .map(|j| {
            let k = slot(j);
            if k >= 1 {
                chain.inclusions[k - 1].compose(&chain.covers[k])
            } else {
                chain.inclusions[p - 1].compose(seam).compose(&chain.covers[0])
            }
        })
        .collect();
    Complex::new(lo, terms, diffs)
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidCertificate(msg.into())
}

impl GpCertificate {
    /// Re-checks the certificate from its data alone: the window is an exact
    /// complex of projectives, exact under Hom(-, A), periodic with the stated
    /// period and with N as the image at 0; both seams are isomorphisms onto
    /// the recomputed syzygies; M ≅ N + Q with Q projective.
    pub fn validate(&self) -> Result<()> {
        let alg = self.module.algebra();
        let w = &self.window;
        let p = self.period as i64;
        if self.period == 0 || w.lo() != -(p + 2) || w.hi() != p + 2 {
            return Err(invalid("window does not cover two periods around 0"));
        }
        if !w.terms().iter().all(Module::is_projective) {
            return Err(invalid("window has a non-projective term"));
        }
        if !w.is_exact() {
            return Err(invalid("window is not exact"));
        }
        if !biexact(w, &[Module::regular(alg)])? {
            return Err(invalid("window is not exact under Hom(-, A)"));
        }
        for j in w.lo()..w.hi() - p {
            let (a, b) = (w.differential(j)?, w.differential(j + p)?);
            if a.blocks() != b.blocks() || w.term(j)? != w.term(j + p)? {
                return Err(invalid(format!("window is not periodic at {j}")));
            }
        }
        let image = w.image(0)?;
        if find_isomorphism(&image, &self.nonprojective)?.is_none() {
            return Err(invalid("image at 0 is not the non-projective part"));
        }
        if !self.projective_part.is_projective() && !self.projective_part.is_zero() {
            return Err(invalid("projective part is not projective"));
        }
        let sum = direct_sum(alg, &[self.nonprojective.clone(), self.projective_part.clone()]);
        if find_isomorphism(&sum, &self.module)?.is_none() {
            return Err(invalid("module is not N + Q"));
        }
        check_seam(&self.nonprojective, self.period, &self.seam)?;
        check_seam(&star(&self.nonprojective)?, self.dual_period, &self.dual_seam)?;
        Ok(())
    }

    pub fn summary(&self) -> CertificateSummary {
        CertificateSummary {
            module: self.module.label().to_string(),
            dims: self.module.dims().to_vec(),
            period: self.period,
            dual_period: self.dual_period,
            ext_depth: self.ext_depth,
            window: self.window.summary(),
            seam: self.seam.blocks().iter().map(matrix_rows).collect(),
        }
    }
}

fn check_seam(n: &Module, p: usize, seam: &ModuleMap) -> Result<()> {
    let mut x = n.clone();
    for _ in 0..p {
        x = syzygy(&x).0;
    }
    if *seam.source() != *n || *seam.target() != x {
        return Err(invalid("seam does not run from N to its recomputed syzygy"));
    }
    if !seam.is_homomorphism() || !seam.is_isomorphism() {
        return Err(invalid("seam is not an isomorphism"));
    }
    Ok(())
}

impl GpRefutation {
    /// Re-checks the reason by one direct recomputation.
    pub fn validate(&self) -> Result<()> {
        let m = &self.module;
        let alg = m.algebra();
        let ok = match self.reason {
            RefutationReason::ExtNonvanishing { degree, dim } => {
                dim > 0 && ext(m, &Module::regular(alg), degree)? == dim
            }
            RefutationReason::BidualityFails { rank_deficit } => {
                rank_deficit > 0 && biduality_deficit(m)? == rank_deficit
            }
            RefutationReason::StarSideExtNonvanishing { degree, dim } => {
                dim > 0 && ext(&star(m)?, &Module::regular(&alg.opposite()), degree)? == dim
            }
        };
        if ok {
            Ok(())
        } else {
            Err(invalid(format!("refutation {:?} does not recompute", self.reason)))
        }
    }
}

/// The complete resolution of M recorded by a certificate: the periodic
/// window for N plus the split piece Q = Q in degrees 0 and 1.
pub fn complete_resolution(m: &Module, cert: &GpCertificate) -> Result<Complex> {
    if find_isomorphism(m, &cert.module)?.is_none() {
        return Err(invalid("certificate is for a different module"));
    }
    cert.validate()?;
    let w = &cert.window;
    let alg = m.algebra();
    let zero = Module::zero(alg);
    let q = &cert.projective_part;
    let terms: Vec<Module> = (w.lo()..=w.hi())
        .map(|j| if j == 0 || j == 1 { q.clone() } else { zero.clone() })
        .collect();
    let diffs: Vec<ModuleMap> = (w.lo()..w.hi())
        .map(|j| {
            let s = (j - w.lo()) as usize;
            if j == 0 {
                ModuleMap::identity(q)
            } else {
                ModuleMap::zero(&terms[s], &terms[s + 1])
            }
        })
        .collect();
    let split = Complex::new(w.lo(), terms, diffs)?;
    w.direct_sum(&split)
}

/// Candidate indecomposables that contain every indecomposable
/// Gorenstein-projective module: all uniserials for Nakayama algebras; for
/// monomial algebras the projectives and the left ideals A·p generated by
/// paths of positive length (the non-projective GP indecomposables are among
/// the A·p with p perfect).
pub fn candidate_universe(a: &Arc<Algebra>) -> Result<Vec<Module>> {
    if a.is_nakayama() && a.is_monomial() {
        let mut out = Vec::new();
        for v in 0..a.vertex_count() {
            let len = Module::projective(a, v).dim();
            for l in 1..=len {
                out.push(Module::uniserial(a, v, l)?);
            }
        }
        return Ok(out);
    }
    if !a.is_monomial() {
        return Err(Error::NotEnumerable(format!(
            "{} is neither Nakayama nor monomial in its word basis",
            a.label()
        )));
    }
    let mut out: Vec<Module> = (0..a.vertex_count()).map(|v| Module::projective(a, v)).collect();
    for (i, w) in a.words().iter().enumerate() {
        if w.is_empty() {
            continue;
        }
        let ideal = left_ideal(a, i)?;
        let mut known = false;
        for o in &out {
            if isomorphism(o, &ideal)?.is_some() {
                known = true;
                break;
            }
        }
        if !known {
            out.push(ideal);
        }
    }
    Ok(out)
}

/// The left ideal A·w inside the projective at the source of w.
fn left_ideal(a: &Arc<Algebra>, w: usize) -> Result<Module> {
    let f = a.field();
    let word = a.word(w);
    let p = Module::projective(a, word.source);
    let n = a.vertex_count();
    let mut basis = Vec::with_capacity(n);
    for t in 0..n {
        let rows = a.block(word.source, t);
        let mut cols: Vec<Vec<u32>> = Vec::new();
        for &u in a.block(word.target, t) {
            let prod = a.mul_basis(u, w);
            if prod.iter().any(|&c| c != 0) {
                cols.push(rows.iter().map(|&r| prod[r]).collect());
            }
        }
        let mut m = Mat::zeros(f, rows.len(), cols.len());
        for (c, col) in cols.iter().enumerate() {
            for (r, &x) in col.iter().enumerate() {
                m.set(r, c, x);
            }
        }
        basis.push(if m.cols() == 0 { m } else { m.column_space() });
    }
    Ok(p.submodule(basis, format!("A·{}", a.basis_labels()[w]))?.0)
}

/// All indecomposable GP modules, projectives included, in the order of the
/// candidate universe.
pub fn gp_indecomposables(ctx: &GpContext, max_depth: usize) -> Result<Vec<Module>> {
    let mut out = Vec::new();
    for m in candidate_universe(ctx.algebra())? {
        match ctx.is_gp(&m, max_depth)? {
            GpVerdict::Yes(_) => out.push(m),
            GpVerdict::No(_) => {}
            GpVerdict::Unknown { depth } => {
                return Err(Error::NotEnumerable(format!(
                    "GP status of {} undecided at depth {depth}",
                    m.label()
                )))
            }
        }
    }
    Ok(out)
}

/// Brute-force GP test on a finite universe of indecomposables closed under
/// syzygy. Builds the graph with an edge U -> ΩU whenever ΩU is an
/// indecomposable member of the universe and 0 -> ΩU -> P(U) -> U -> 0 stays
/// exact under Hom(-, A) and Hom(A, -); a non-projective indecomposable is
/// GP exactly when it lies on a cycle. Arbitrary modules are tested
/// summandwise.
pub fn gp_oracle(m: &Module, universe: &[Module]) -> Result<bool> {
    let alg = m.algebra();
    let reg = Module::regular(alg);
    let locate = |x: &Module| -> Result<Option<usize>> {
        for (i, u) in universe.iter().enumerate() {
            if u.dims() == x.dims() && isomorphism(u, x)?.is_some() {
                return Ok(Some(i));
            }
        }
        Ok(None)
    };
    let mut next: Vec<Option<usize>> = Vec::with_capacity(universe.len());
    for u in universe {
        if u.is_projective() {
            next.push(None);
            continue;
        }
        let (omega, inc) = syzygy(u);
        let pi = projective_cover(u);
        let zero = Module::zero(alg);
        let seq = Complex::new(
            -1,
            vec![
                zero.clone(),
                omega.clone(),
                pi.source().clone(),
                u.clone(),
                zero.clone(),
            ],
            vec![ModuleMap::zero(&zero, &omega), inc, pi, ModuleMap::zero(u, &zero)],
        )?;
        let good = biexact(&seq, std::slice::from_ref(&reg))?;
        let parts = decompose(&omega)?;
        let edge = if good && parts.len() == 1 {
            match locate(&omega)? {
                Some(i) => Some(i),
                None => {
                    return Err(Error::UniverseNotClosed(format!(
                        "syzygy of {} is not in the universe",
                        u.label()
                    )))
                }
            }
        } else {
            None
        };
        next.push(edge);
    }
    let on_cycle = |start: usize| {
        let mut x = start;
        for _ in 0..universe.len() {
            match next[x] {
                Some(y) if y == start => return true,
                Some(y) => x = y,
                None => return false,
            }
        }
        false
    };
    for part in decompose(m)?.modules() {
        let Some(i) = locate(&part)? else {
            return Err(Error::UniverseNotClosed(format!(
                "{} is not in the universe",
                part.label()
            )));
        };
        if !universe[i].is_projective() && !on_cycle(i) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Per-index outcome of a stability check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ImageVerdict {
    pub index: i64,
    pub dims: Vec<usize>,
    /// "yes", "no" or "unknown"
    pub gp: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StabilityReport {
    pub terms_gp: bool,
    pub exact: bool,
    pub biexact: bool,
    pub images: Vec<ImageVerdict>,
    /// hypotheses hold but some image is not confirmed GP
    pub contradiction: bool,
}

impl StabilityReport {
    pub fn passed(&self) -> bool {
        self.terms_gp && self.exact && self.biexact && !self.contradiction
    }
}

fn verdict_word(v: &GpVerdict) -> &'static str {
    match v {
        GpVerdict::Yes(_) => "yes",
        GpVerdict::No(_) => "no",
        GpVerdict::Unknown { .. } => "unknown",
    }
}

/// For an exact complex of GP modules that stays exact under Hom(E, -) and
/// Hom(-, E) for the given summands of E, every image Im d^i with
/// lo < i < hi - 1 should again be GP. Reports the hypotheses and the
/// verdict on each such image.
pub fn stability_check(
    ctx: &GpContext,
    c: &Complex,
    e_summands: &[Module],
    max_depth: usize,
) -> Result<StabilityReport> {
    let mut terms_gp = true;
    for t in c.terms() {
        if !t.is_zero() && !ctx.is_gp(t, max_depth)?.is_yes() {
            terms_gp = false;
        }
    }
    let exact = c.is_exact();
    let bi = biexact(c, e_summands)?;
    let mut images = Vec::new();
    for i in c.lo() + 1..c.hi() - 1 {
        let im = c.image(i)?;
        let word = if im.is_zero() {
            "yes"
        } else {
            verdict_word(&ctx.is_gp(&im, max_depth)?)
        };
        images.push(ImageVerdict {
            index: i,
            dims: im.dims().to_vec(),
            gp: word.to_string(),
        });
    }
    let contradiction = terms_gp && exact && bi && images.iter().any(|v| v.gp != "yes");
    Ok(StabilityReport {
        terms_gp,
        exact,
        biexact: bi,
        images,
        contradiction,
    })
}

/// Restricts two windows to their common range and adds them termwise.
pub fn splice(a: &Complex, b: &Complex) -> Result<Complex> {
    let lo = a.lo().max(b.lo());
    let hi = a.hi().min(b.hi());
    if lo > hi {
        return Err(Error::WindowMismatch("windows do not overlap".into()));
    }
    a.restrict(lo, hi)?.direct_sum(&b.restrict(lo, hi)?)
}

/// The split short exact sequence 0 -> X -> X + Y -> Y -> 0 in degrees 0..2,
/// padded by zeros.
pub fn split_sequence(x: &Module, y: &Module) -> Result<Complex> {
    let alg = x.algebra();
    let zero = Module::zero(alg);
    let sum = direct_sum(alg, &[x.clone(), y.clone()]);
    let (incs, projs) = direct_sum_maps(&sum, &[x.clone(), y.clone()]);
    Complex::new(
        -1,
        vec![zero.clone(), x.clone(), sum, y.clone(), zero.clone()],
        vec![
            ModuleMap::zero(&zero, x),
            incs[0].clone(),
            projs[1].clone(),
            ModuleMap::zero(y, &zero),
        ],
    )
}
