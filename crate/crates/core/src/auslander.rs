//! The relative Auslander algebra Γ = End(E)^op of a Gorenstein-projective
//! generator E, the functor Hom(E, -) into Γ-modules, and the checks that
//! this functor is fully faithful and identifies the GP side of Λ with the
//! projective Γ-modules.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{Algebra, ConstantAlgebra};
use crate::error::{Error, Result};
use crate::exactfield::Mat;
use crate::gorenstein::{gp_indecomposables, GpContext, GpVerdict};
use crate::modules::{coordinates, direct_sum, hom, hom_dim, isomorphism, Module, ModuleMap};

#[cfg(test)]
mod tests;

/// E = E_1 + ... + E_n: the indecomposable projectives (by vertex) followed
/// by the non-projective GP indecomposables.
#[derive(Clone, Debug)]
pub struct GpGenerator {
    pub summands: Vec<Module>,
    pub total: Module,
    pub projective_count: usize,
}

impl GpGenerator {
    pub fn new(ctx: &GpContext, max_depth: usize) -> Result<Self> {
        let a = ctx.algebra();
        let mut summands: Vec<Module> = (0..a.vertex_count()).map(|v| Module::projective(a, v)).collect();
        let projective_count = summands.len();
        summands.extend(
            gp_indecomposables(ctx, max_depth)?
                .into_iter()
                .filter(|m| !m.is_projective()),
        );
        Ok(Self::from_summands(summands, projective_count))
    }

    pub fn from_summands(summands: Vec<Module>, projective_count: usize) -> Self {
        let alg = summands[0].algebra().clone();
        let total = direct_sum(&alg, &summands).with_label("E");
        Self {
            summands,
            total,
            projective_count,
        }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        self.total.algebra()
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    /// Every summand re-tested GP with a validated certificate, and every
    /// indecomposable projective present.
    pub fn validate(&self, ctx: &GpContext, max_depth: usize) -> Result<bool> {
        let a = self.algebra();
        for v in 0..a.vertex_count() {
            let p = Module::projective(a, v);
            let mut found = false;
            for s in &self.summands {
                if isomorphism(s, &p)?.is_some() {
                    found = true;
                    break;
                }
            }
            if !found {
                return Ok(false);
            }
        }
        for s in &self.summands {
            match ctx.is_gp(s, max_depth)? {
                GpVerdict::Yes(cert) => cert.validate()?,
                _ => return Ok(false),
            }
        }
        Ok(true)
    }
}

/// A basis map E_source -> E_target of End(E).
#[derive(Clone, Debug)]
pub struct BasisMap {
    pub source: usize,
    pub target: usize,
    pub map: ModuleMap,
}

/// Γ on a word basis, with the raw basis of End(E) it was built from.
#[derive(Clone, Debug)]
pub struct AuslanderAlgebra {
    pub gamma: Arc<Algebra>,
    /// Γ in the raw basis `basis_maps`, product f * g = g ∘ f
    pub constants: ConstantAlgebra,
    pub basis_maps: Vec<BasisMap>,
    /// column w: the word w of Γ in raw coordinates
    pub change_of_basis: Mat,
    pub generator: GpGenerator,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AusSummary {
    pub dim: usize,
    pub idempotents: usize,
    pub arrows: usize,
    pub cartan: Vec<Vec<usize>>,
}

impl AuslanderAlgebra {
    pub fn new(generator: GpGenerator) -> Result<Self> {
        let alg = generator.algebra().clone();
        let f = alg.field();
        let n = generator.len();
        let mut basis_maps = Vec::new();
        // offsets[a * n + b]: first raw index of Hom(E_a, E_b)
        let mut offsets = vec![0; n * n];
        let mut bases = vec![Vec::new(); n * n];
        for a in 0..n {
            for b in 0..n {
                offsets[a * n + b] = basis_maps.len();
                let hs = hom(&generator.summands[a], &generator.summands[b])?;
                for h in &hs {
                    basis_maps.push(BasisMap {
                        source: a,
                        target: b,
                        map: h.clone(),
                    });
                }
                bases[a * n + b] = hs;
            }
        }
        let d = basis_maps.len();
        let mut products = Vec::new();
        for (i, x) in basis_maps.iter().enumerate() {
            for (j, y) in basis_maps.iter().enumerate() {
                // x * y = y ∘ x, defined when x lands where y starts
                if x.target != y.source {
                    continue;
                }
                let comp = y.map.compose(&x.map);
                if comp.is_zero() {
                    continue;
                }
                let key = x.source * n + y.target;
                let c = coordinates(&bases[key], &comp)
                    .ok_or_else(|| Error::InvalidMap("composite outside its Hom space".into()))?;
                for (k, &ck) in c.iter().enumerate() {
                    if ck != 0 {
                        products.push((i, j, offsets[key] + k, ck as i64));
                    }
                }
            }
        }
        let mut idems = Vec::with_capacity(n);
        let mut unit = vec![0i64; d];
        for a in 0..n {
            let key = a * n + a;
            let id = ModuleMap::identity(&generator.summands[a]);
            let c =
                coordinates(&bases[key], &id).ok_or_else(|| Error::InvalidMap("identity outside End(E_a)".into()))?;
            let mut e = vec![0u32; d];
            for (k, &ck) in c.iter().enumerate() {
                e[offsets[key] + k] = ck;
                unit[offsets[key] + k] = ck as i64;
            }
            idems.push(e);
        }
        let labels = basis_maps
            .iter()
            .enumerate()
            .map(|(i, b)| format!("h{}_{}_{}", b.source, b.target, i - offsets[b.source * n + b.target]))
            .collect();
        let constants = ConstantAlgebra::new(f, d, &products, Some(unit), Some(labels))?;
        let (gamma, change_of_basis) =
            Algebra::from_constants(&constants, Some(idems), format!("Aus({})", alg.label()))?;
        Ok(Self {
            gamma: Arc::new(gamma),
            constants,
            basis_maps,
            change_of_basis,
            generator,
        })
    }

    pub fn summary(&self) -> AusSummary {
        AusSummary {
            dim: self.gamma.dim(),
            idempotents: self.gamma.vertex_count(),
            arrows: self.gamma.arrows().len(),
            cartan: self.gamma.cartan(),
        }
    }

    /// A word of Γ as a map of Λ-modules E_(Γ-target) -> E_(Γ-source).
    fn word_map(&self, w: usize) -> ModuleMap {
        let word = self.gamma.word(w);
        let (s, t) = (word.source, word.target);
        let es = &self.generator.summands;
        let mut acc = ModuleMap::zero(&es[t], &es[s]);
        for (k, b) in self.basis_maps.iter().enumerate() {
            let c = self.change_of_basis.get(k, w);
            if c == 0 {
                continue;
            }
            debug_assert!(b.source == t && b.target == s);
            acc = acc.add(&b.map.scale(c));
        }
        acc
    }

    fn yoneda_bases(&self, m: &Module) -> Result<Vec<Vec<ModuleMap>>> {
        if !m.same_algebra(&self.generator.total) {
            return Err(Error::AlgebraMismatch);
        }
        self.generator.summands.iter().map(|e| hom(e, m)).collect()
    }

    /// Hom(E, M) as a Γ-module: vertex a carries Hom(E_a, M) and an arrow
    /// s -> t acts by precomposition with the corresponding E_t -> E_s.
    pub fn yoneda(&self, m: &Module) -> Result<Module> {
        let bases = self.yoneda_bases(m)?;
        let f = self.gamma.field();
        let dims: Vec<usize> = bases.iter().map(Vec::len).collect();
        let mut arrows = Vec::with_capacity(self.gamma.arrows().len());
        for (a, arrow) in self.gamma.arrows().iter().enumerate() {
            let g = self.word_map(self.gamma.arrow_word(a));
            let mut mat = Mat::zeros(f, dims[arrow.target], dims[arrow.source]);
            for (col, phi) in bases[arrow.source].iter().enumerate() {
                let c = coordinates(&bases[arrow.target], &phi.compose(&g))
                    .ok_or_else(|| Error::InvalidMap("precomposite outside Hom(E_t, M)".into()))?;
                for (row, &x) in c.iter().enumerate() {
                    mat.set(row, col, x);
                }
            }
            arrows.push(mat);
        }
        Module::new(self.gamma.clone(), dims, arrows, format!("F{}", m.label()))
    }

    /// Hom(E, f): postcomposition with f.
    pub fn yoneda_map(&self, f: &ModuleMap) -> Result<ModuleMap> {
        let src = self.yoneda(f.source())?;
        let tgt = self.yoneda(f.target())?;
        let sb = self.yoneda_bases(f.source())?;
        let tb = self.yoneda_bases(f.target())?;
        let field = self.gamma.field();
        let blocks = sb
            .iter()
            .zip(&tb)
            .map(|(s, t)| {
                let mut mat = Mat::zeros(field, t.len(), s.len());
                for (col, phi) in s.iter().enumerate() {
                    let c = coordinates(t, &f.compose(phi)).expect("postcomposite stays in Hom(E_a, N)");
                    for (row, &x) in c.iter().enumerate() {
                        mat.set(row, col, x);
                    }
                }
                mat
            })
            .collect();
        ModuleMap::new(src, tgt, blocks)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct HomMismatch {
    pub x: String,
    pub y: String,
    pub over_base: usize,
    pub over_gamma: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FullyFaithfulReport {
    pub pairs: usize,
    pub mismatches: Vec<HomMismatch>,
}

impl FullyFaithfulReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// dim Hom(X, Y) = dim Hom(FX, FY) for all sample pairs.
pub fn verify_fully_faithful(aus: &AuslanderAlgebra, samples: &[Module]) -> Result<FullyFaithfulReport> {
    let images: Vec<Module> = samples.iter().map(|m| aus.yoneda(m)).collect::<Result<_>>()?;
    let mut mismatches = Vec::new();
    for (x, fx) in samples.iter().zip(&images) {
        for (y, fy) in samples.iter().zip(&images) {
            let (l, g) = (hom_dim(x, y)?, hom_dim(fx, fy)?);
            if l != g {
                mismatches.push(HomMismatch {
                    x: x.label().into(),
                    y: y.label().into(),
                    over_base: l,
                    over_gamma: g,
                });
            }
        }
    }
    Ok(FullyFaithfulReport {
        pairs: samples.len() * samples.len(),
        mismatches,
    })
}

/// Outcome of the search for non-projective GP Γ-modules among the summands
/// of syzygies of simples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RefutationSearch {
    pub depth: usize,
    pub examined: usize,
    pub counterexamples: Vec<String>,
    pub undecided: Vec<String>,
}

impl RefutationSearch {
    pub fn is_empty(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Runs the GP test on every non-projective indecomposable summand of
/// Ω^i(S), 1 <= i <= depth, for all simples S. This samples for
/// counterexamples to CM-freeness; an empty result is not a proof.
pub fn cm_free_refutation(g: &Arc<Algebra>, depth: usize) -> Result<RefutationSearch> {
    let ctx = GpContext::new(g);
    let mut seen = std::collections::BTreeSet::new();
    let mut out = RefutationSearch {
        depth,
        examined: 0,
        counterexamples: Vec::new(),
        undecided: Vec::new(),
    };
    for v in 0..g.vertex_count() {
        let orbit = ctx.cache().syzygy_orbit(&Module::simple(g, v), depth)?;
        for (&c, &d) in orbit.classes.iter().zip(&orbit.depth) {
            if d == 0 || ctx.cache().is_projective(c) || !seen.insert(c) {
                continue;
            }
            let rep = ctx.cache().representative(c);
            out.examined += 1;
            let name = format!("{} {:?}", rep.label(), rep.dims());
            match ctx.is_gp(&rep, depth)? {
                GpVerdict::Yes(_) => out.counterexamples.push(name),
                GpVerdict::No(_) => {}
                GpVerdict::Unknown { .. } => out.undecided.push(name),
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ExpReport {
    /// F(E_a) ≅ Γ e_a for every summand
    pub summands_to_projectives: bool,
    /// distinct summands go to distinct projectives and every projective is hit
    pub bijective: bool,
    pub refutation: RefutationSearch,
}

impl ExpReport {
    pub fn passed(&self) -> bool {
        self.summands_to_projectives && self.bijective && self.refutation.is_empty()
    }
}

/// Hom(E, -) sends the summands of E onto the indecomposable projective
/// Γ-modules, one to one, and the refutation search finds no non-projective
/// GP Γ-module.
pub fn verify_equivalence_exp(aus: &AuslanderAlgebra, depth: usize) -> Result<ExpReport> {
    let g = &aus.gamma;
    let n = aus.generator.len();
    let mut to_projectives = true;
    let mut hit = vec![0usize; g.vertex_count()];
    for e in &aus.generator.summands {
        let fe = aus.yoneda(e)?;
        let mut matched = None;
        for v in 0..g.vertex_count() {
            if isomorphism(&fe, &Module::projective(g, v))?.is_some() {
                matched = Some(v);
                break;
            }
        }
        match matched {
            Some(v) => hit[v] += 1,
            None => to_projectives = false,
        }
    }
    let bijective = g.vertex_count() == n && hit.iter().all(|&h| h == 1);
    Ok(ExpReport {
        summands_to_projectives: to_projectives,
        bijective,
        refutation: cm_free_refutation(g, depth)?,
    })
}

/// Invariant comparison standing in for an algebra isomorphism test: same
/// dimension and Cartan matrices that agree up to a permutation of vertices.
pub fn cartan_equivalent(a: &Algebra, b: &Algebra) -> bool {
    if a.dim() != b.dim() || a.vertex_count() != b.vertex_count() {
        return false;
    }
    let (ca, cb) = (a.cartan(), b.cartan());
    let n = ca.len();
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn extend(ca: &[Vec<usize>], cb: &[Vec<usize>], perm: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let i = perm.len();
        if i == ca.len() {
            return true;
        }
        for j in 0..ca.len() {
            if used[j] {
                continue;
            }
            let fits = (0..i).all(|k| ca[i][k] == cb[j][perm[k]] && ca[k][i] == cb[perm[k]][j]) && ca[i][i] == cb[j][j];
            if fits {
                used[j] = true;
                perm.push(j);
                if extend(ca, cb, perm, used) {
                    return true;
                }
                perm.pop();
                used[j] = false;
            }
        }
        false
    }
    extend(&ca, &cb, &mut perm, &mut used)
}
