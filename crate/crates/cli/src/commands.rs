//! The three subcommands, independent of argument parsing and I/O.

use std::sync::Arc;
use std::time::Instant;

use cmfree_core::algebra::Algebra;
use cmfree_core::auslander::{
    cm_free_refutation, verify_equivalence_exp, verify_fully_faithful, AuslanderAlgebra, GpGenerator,
};
use cmfree_core::complexes::Complex;
use cmfree_core::gorenstein::{
    candidate_universe, complete_resolution, gp_indecomposables, splice, stability_check, GpContext, GpVerdict,
    StabilityReport,
};
use cmfree_core::invariants::{classify_full, global_dimension, verify_dif, Caps, ClassificationReport};
use cmfree_core::modules::Module;
use serde::Serialize;

use crate::report::ReportEnvelope;
use crate::spec::{AlgebraSpecFile, SpecError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_CONTRADICTION: i32 = 2;

#[derive(Clone, Copy, Debug, Default)]
pub struct Options {
    pub characteristic: Option<u32>,
    pub cap: Option<usize>,
    pub certificates: bool,
    pub timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Theorem {
    Free,
    Exp,
    Yoneda,
    Stability,
    Dif,
}

impl Theorem {
    pub fn name(self) -> &'static str {
        match self {
            Theorem::Free => "free",
            Theorem::Exp => "exp",
            Theorem::Yoneda => "yoneda",
            Theorem::Stability => "stability",
            Theorem::Dif => "dif",
        }
    }
}

/// What a command produced: the serialized envelope, a short text summary
/// and whether some verification contradicted a theorem.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub json: String,
    pub text: String,
    pub contradiction: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.contradiction {
            EXIT_CONTRADICTION
        } else {
            EXIT_OK
        }
    }
}

struct Loaded {
    algebra: Arc<Algebra>,
    caps: Caps,
    characteristic: u32,
}

fn load(input: &str, opts: &Options) -> Result<Loaded, SpecError> {
    let spec = AlgebraSpecFile::parse(input)?;
    let field = spec.field(opts.characteristic)?;
    Ok(Loaded {
        algebra: spec.build(field)?,
        caps: spec.caps(opts.cap),
        characteristic: field.characteristic(),
    })
}

fn with_guidance(e: cmfree_core::Error) -> SpecError {
    match e {
        cmfree_core::Error::NotEnumerable(m) => SpecError::Algebra(cmfree_core::Error::NotEnumerable(format!(
            "{m}; only Nakayama and monomial algebras have an enumerated GP universe, use `classify` for the sampled report"
        ))),
        other => SpecError::Algebra(other),
    }
}

fn finish<R: Serialize>(mut env: ReportEnvelope<R>, start: Instant, opts: &Options) -> ReportEnvelope<R> {
    if opts.timing {
        env.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    env
}

pub fn classify(input: &str, opts: &Options) -> Result<(Outcome, ClassificationReport), SpecError> {
    let start = Instant::now();
    let l = load(input, opts)?;
    let c = classify_full(&l.algebra, l.caps).map_err(with_guidance)?;
    let text = classify_text(&c.report);
    let contradiction = c.report.contradiction();
    let mut env = ReportEnvelope::new("classify", input.as_bytes(), l.characteristic, c.report.clone());
    if opts.certificates {
        env.certificates = Some(c.certificates.iter().map(|x| x.summary()).collect());
    }
    let env = finish(env, start, opts);
    Ok((
        Outcome {
            json: env.to_json(),
            text,
            contradiction,
        },
        c.report,
    ))
}

fn classify_text(r: &ClassificationReport) -> String {
    let word = |t: cmfree_core::invariants::TriBool| serde_json::to_string(&t).expect("serializes").replace('"', "");
    let mut s = format!("{} (dim {}, vertices {})\n", r.algebra, r.dim, r.vertices);
    s += &format!("  CM-finite   {}\n", word(r.cm_finite));
    s += &format!(
        "  GP indecomposables {}\n",
        r.gp_count.map_or("unknown".to_string(), |n| n.to_string())
    );
    for g in r.gp_modules.iter().filter(|g| !g.projective) {
        s += &format!("    {} {:?} period {}\n", g.module, g.dims, g.period);
    }
    s += &format!("  CM-free     {}\n", word(r.cm_free));
    if let Some(g) = &r.gp_sampler {
        s += &format!(
            "  sampled {} syzygy summands to depth {}: {} GP, {} undecided\n",
            g.examined,
            g.depth,
            g.counterexamples.len(),
            g.undecided.len()
        );
    }
    s += &format!("  Gorenstein  {}\n", word(r.gorenstein));
    s += &format!("  gl.dim      {}\n", dim_text(&r.gl_dim));
    if let Some(a) = &r.aus_summary {
        s += &format!(
            "  Aus: dim {}, {} vertices, gl.dim {}\n",
            a.summary.dim,
            a.summary.idempotents,
            dim_text(&a.gl_dim)
        );
    }
    if let Some(e) = &r.aus_error {
        s += &format!("  Aus: not built ({e})\n");
    }
    s += &format!("  checks passed: {}\n", r.checks_passed.join(", "));
    if !r.checks_failed.is_empty() {
        s += &format!("  checks FAILED: {}\n", r.checks_failed.join(", "));
    }
    s
}

fn dim_text(d: &cmfree_core::invariants::DimStatus) -> String {
    use cmfree_core::invariants::DimStatus;
    match d {
        DimStatus::Finite(n) => n.to_string(),
        DimStatus::CertifiedInfinite(w) => format!("infinite (witness {} recurs with period {})", w.module, w.period),
        DimStatus::Unknown(cap) => format!("unknown (cap {cap})"),
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerifyReport {
    pub theorem: &'static str,
    pub algebra: String,
    pub passed: bool,
    pub contradiction: bool,
    pub details: serde_json::Value,
}

fn to_value<T: Serialize>(x: &T) -> serde_json::Value {
    serde_json::to_value(x).expect("reports serialize")
}

pub fn build_aus(a: &Arc<Algebra>, caps: Caps) -> Result<AuslanderAlgebra, SpecError> {
    let ctx = GpContext::new(a);
    let generator = GpGenerator::new(&ctx, caps.max_depth).map_err(with_guidance)?;
    AuslanderAlgebra::new(generator).map_err(with_guidance)
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SplicedCheck {
    pub description: String,
    pub window: [i64; 2],
    #[serde(flatten)]
    pub report: StabilityReport,
}

/// Complete resolutions of the GP indecomposables, non-projective first,
/// labelled by module.
pub fn gp_resolutions(ctx: &GpContext, max_depth: usize) -> cmfree_core::Result<Vec<(String, Complex)>> {
    let mut gp = gp_indecomposables(ctx, max_depth)?;
    gp.sort_by_key(Module::is_projective);
    let mut out = Vec::new();
    for m in gp {
        if let GpVerdict::Yes(cert) = ctx.is_gp(&m, max_depth)? {
            out.push((m.label().to_string(), complete_resolution(&m, &cert)?));
        }
    }
    Ok(out)
}

/// Up to `count` periodic complexes R_i + R_j[s]: sums of two complete
/// resolutions over their common window, the second shifted by s.
pub fn spliced_family(ctx: &GpContext, count: usize, max_depth: usize) -> cmfree_core::Result<Vec<(String, Complex)>> {
    let base = gp_resolutions(ctx, max_depth)?;
    let mut out = Vec::new();
    for i in 0..base.len() {
        for j in i..base.len() {
            for s in 0..=2i64 {
                if out.len() == count {
                    return Ok(out);
                }
                let c = splice(&base[i].1, &base[j].1.reindexed(s))?;
                out.push((format!("R({}) + R({})[{s}]", base[i].0, base[j].0), c));
            }
        }
    }
    Ok(out)
}

/// Stability with C = add(A): each spliced complex is checked for exactness
/// under Hom against the indecomposable projectives.
pub fn check_spliced(ctx: &GpContext, count: usize, max_depth: usize) -> cmfree_core::Result<Vec<SplicedCheck>> {
    let a = ctx.algebra();
    let projectives: Vec<Module> = (0..a.vertex_count()).map(|v| Module::projective(a, v)).collect();
    spliced_family(ctx, count, max_depth)?
        .into_iter()
        .map(|(description, c)| {
            Ok(SplicedCheck {
                description,
                window: [c.lo(), c.hi()],
                report: stability_check(ctx, &c, &projectives, max_depth)?,
            })
        })
        .collect()
}

/// Number of spliced complexes `verify --theorem stability` checks.
pub const STABILITY_FAMILY: usize = 10;

pub fn verify(input: &str, theorem: Theorem, opts: &Options) -> Result<(Outcome, VerifyReport), SpecError> {
    let start = Instant::now();
    let l = load(input, opts)?;
    let a = &l.algebra;
    let caps = l.caps;
    let (passed, contradiction, details) = match theorem {
        Theorem::Free => {
            let aus = build_aus(a, caps)?;
            let search = cm_free_refutation(&aus.gamma, caps.refutation_depth).map_err(with_guidance)?;
            let gl = global_dimension(&aus.gamma, caps.gl_dim_cap).map_err(with_guidance)?;
            let empty = search.is_empty();
            let details = serde_json::json!({
                "aus": to_value(&aus.summary()),
                "refutation": to_value(&search),
                "ausGlDim": to_value(&gl),
            });
            (empty, !empty, details)
        }
        Theorem::Exp => {
            let aus = build_aus(a, caps)?;
            let r = verify_equivalence_exp(&aus, caps.refutation_depth).map_err(with_guidance)?;
            (r.passed(), !r.passed(), to_value(&r))
        }
        Theorem::Yoneda => {
            let aus = build_aus(a, caps)?;
            let samples = candidate_universe(a).map_err(with_guidance)?;
            let r = verify_fully_faithful(&aus, &samples).map_err(with_guidance)?;
            (r.passed(), !r.passed(), to_value(&r))
        }
        Theorem::Stability => {
            let ctx = GpContext::new(a);
            let checks = check_spliced(&ctx, STABILITY_FAMILY, caps.max_depth).map_err(with_guidance)?;
            let passed = !checks.is_empty() && checks.iter().all(|c| c.report.passed());
            let contradiction = checks.iter().any(|c| c.report.contradiction);
            (passed, contradiction, to_value(&checks))
        }
        Theorem::Dif => {
            let aus = build_aus(a, caps)?;
            let r = verify_dif(a, &aus.gamma, caps.gl_dim_cap).map_err(with_guidance)?;
            (r.passed(), r.contradiction, to_value(&r))
        }
    };
    let report = VerifyReport {
        theorem: theorem.name(),
        algebra: a.label().to_string(),
        passed,
        contradiction,
        details,
    };
    let text = format!(
        "{} on {}: {}\n",
        theorem.name(),
        report.algebra,
        if passed {
            "pass"
        } else if contradiction {
            "CONTRADICTION"
        } else {
            "undecided"
        }
    );
    let env = finish(
        ReportEnvelope::new("verify", input.as_bytes(), l.characteristic, report.clone()),
        start,
        opts,
    );
    Ok((
        Outcome {
            json: env.to_json(),
            text,
            contradiction,
        },
        report,
    ))
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AusEmitReport {
    pub algebra: String,
    pub generator_summands: Vec<String>,
    #[serde(flatten)]
    pub summary: cmfree_core::auslander::AusSummary,
}

/// Builds Aus(A) and returns it as a structure-constants spec file.
pub fn aus(input: &str, opts: &Options) -> Result<(Outcome, String), SpecError> {
    let start = Instant::now();
    let l = load(input, opts)?;
    let aus = build_aus(&l.algebra, l.caps)?;
    let label = aus.gamma.label().to_string();
    let spec = AlgebraSpecFile::from_algebra(&aus.gamma, &label);
    let report = AusEmitReport {
        algebra: l.algebra.label().to_string(),
        generator_summands: aus.generator.summands.iter().map(|m| m.label().to_string()).collect(),
        summary: aus.summary(),
    };
    let text = format!(
        "{}: dim {}, {} vertices, {} arrows\n",
        label, report.summary.dim, report.summary.idempotents, report.summary.arrows
    );
    let env = finish(
        ReportEnvelope::new("aus", input.as_bytes(), l.characteristic, report),
        start,
        opts,
    );
    Ok((
        Outcome {
            json: env.to_json(),
            text,
            contradiction: false,
        },
        spec.to_toml(),
    ))
}
