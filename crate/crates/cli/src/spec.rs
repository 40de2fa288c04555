//! Algebra description files.
//!
//! A spec file is TOML with a `kind` key selecting one of four dialects.
//! Unknown keys, and keys belonging to another dialect, are rejected.

use std::collections::BTreeMap;
use std::sync::Arc;

use cmfree_core::algebra::{
    nakayama, AdmissibleSequence, Algebra, Arrow, ConstantAlgebra, MonomialPresentation, Quiver,
};
use cmfree_core::exactfield::PrimeField;
use cmfree_core::invariants::Caps;
use serde::{Deserialize, Serialize};

pub const DEFAULT_CHARACTERISTIC: u32 = 32003;

#[derive(Debug, thiserror::Error)]
pub enum SpecError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("kind `{kind}` does not accept key `{key}`")]
    ForeignKey { kind: &'static str, key: &'static str },
    #[error("kind `{kind}` requires key `{key}`")]
    MissingKey { kind: &'static str, key: &'static str },
    #[error("unknown arrow `{0}` in a relation")]
    UnknownArrow(String),
    #[error(transparent)]
    Algebra(#[from] cmfree_core::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    NakayamaCyclic,
    NakayamaLinear,
    BoundQuiverMonomial,
    StructureConstants,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::NakayamaCyclic => "nakayama-cyclic",
            Kind::NakayamaLinear => "nakayama-linear",
            Kind::BoundQuiverMonomial => "bound-quiver-monomial",
            Kind::StructureConstants => "structure-constants",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct CapsSpec {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_depth: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gl_dim_cap: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub refutation_depth: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowSpec {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// The file as written. Every dialect-specific key is optional here and
/// checked against `kind` by [`AlgebraSpecFile::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpecFile {
    pub kind: Kind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub characteristic: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertices: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub arrows: Option<Vec<ArrowSpec>>,
    /// arrow names in the order they are applied
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relations: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    /// `[i, j, k, c]`: b_i * b_j has coefficient c on b_k
    #[serde(skip_serializing_if = "Option::is_none")]
    pub products: Option<Vec<[i64; 4]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub idempotents: Option<Vec<Vec<i64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub caps: Option<CapsSpec>,
}

impl AlgebraSpecFile {
    pub fn parse(text: &str) -> Result<Self, SpecError> {
        let spec: AlgebraSpecFile = toml::from_str(text).map_err(|e| SpecError::Parse(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("spec files serialize")
    }

    fn present_keys(&self) -> Vec<&'static str> {
        let mut keys = Vec::new();
        let mut mark = |on: bool, k| {
            if on {
                keys.push(k)
            }
        };
        mark(self.values.is_some(), "values");
        mark(self.vertices.is_some(), "vertices");
        mark(self.arrows.is_some(), "arrows");
        mark(self.relations.is_some(), "relations");
        mark(self.dim.is_some(), "dim");
        mark(self.products.is_some(), "products");
        mark(self.unit.is_some(), "unit");
        mark(self.idempotents.is_some(), "idempotents");
        mark(self.labels.is_some(), "labels");
        keys
    }

    pub fn validate(&self) -> Result<(), SpecError> {
        let (required, optional): (&[&'static str], &[&'static str]) = match self.kind {
            Kind::NakayamaCyclic | Kind::NakayamaLinear => (&["values"], &[]),
            Kind::BoundQuiverMonomial => (&["vertices", "arrows", "relations"], &[]),
            Kind::StructureConstants => (&["dim", "products"], &["unit", "idempotents", "labels"]),
        };
        let present = self.present_keys();
        for key in &present {
            if !required.contains(key) && !optional.contains(key) {
                return Err(SpecError::ForeignKey {
                    kind: self.kind.name(),
                    key,
                });
            }
        }
        for key in required {
            if !present.contains(key) {
                return Err(SpecError::MissingKey {
                    kind: self.kind.name(),
                    key,
                });
            }
        }
        Ok(())
    }

    pub fn field(&self, override_char: Option<u32>) -> Result<PrimeField, SpecError> {
        let p = override_char.or(self.characteristic).unwrap_or(DEFAULT_CHARACTERISTIC);
        Ok(PrimeField::new(p)?)
    }

    pub fn caps(&self, override_cap: Option<usize>) -> Caps {
        let mut caps = Caps::default();
        if let Some(c) = &self.caps {
            caps.max_depth = c.max_depth.unwrap_or(caps.max_depth);
            caps.gl_dim_cap = c.gl_dim_cap.unwrap_or(caps.gl_dim_cap);
            caps.refutation_depth = c.refutation_depth.unwrap_or(caps.refutation_depth);
        }
        if let Some(n) = override_cap {
            caps.max_depth = n;
            caps.gl_dim_cap = n;
        }
        caps
    }

    pub fn build(&self, field: PrimeField) -> Result<Arc<Algebra>, SpecError> {
        let alg = match self.kind {
            Kind::NakayamaCyclic | Kind::NakayamaLinear => {
                let values = self.values.clone().unwrap_or_default();
                let seq = if self.kind == Kind::NakayamaCyclic {
                    AdmissibleSequence::cyclic(values)?
                } else {
                    AdmissibleSequence::linear(values)?
                };
                nakayama(&seq, field)?.assemble()?
            }
            Kind::BoundQuiverMonomial => {
                let arrows: Vec<Arrow> = self
                    .arrows
                    .iter()
                    .flatten()
                    .map(|a| Arrow {
                        name: a.name.clone(),
                        source: a.source,
                        target: a.target,
                    })
                    .collect();
                let quiver = Quiver::new(self.vertices.unwrap_or(0), arrows)?;
                let relations = self
                    .relations
                    .iter()
                    .flatten()
                    .map(|r| {
                        r.iter()
                            .map(|n| {
                                quiver
                                    .arrow_by_name(n)
                                    .ok_or_else(|| SpecError::UnknownArrow(n.clone()))
                            })
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                MonomialPresentation::new(field, quiver, relations)?.assemble()?
            }
            Kind::StructureConstants => {
                let dim = self.dim.unwrap_or(0);
                let products: Vec<(usize, usize, usize, i64)> = self
                    .products
                    .iter()
                    .flatten()
                    .map(|&[i, j, k, c]| index(i, dim).and_then(|i| Ok((i, index(j, dim)?, index(k, dim)?, c))))
                    .collect::<Result<_, _>>()?;
                let ca = ConstantAlgebra::new(field, dim, &products, self.unit.clone(), self.labels.clone())?;
                let idems = self.idempotents.as_ref().map(|rows| {
                    rows.iter()
                        .map(|r| r.iter().map(|&c| field.from_i64(c)).collect())
                        .collect()
                });
                Algebra::from_constants(&ca, idems, "")?.0
            }
        };
        let label = self.label.clone().unwrap_or_else(|| alg.label().to_string());
        Ok(Arc::new(alg.with_label(if label.is_empty() {
            "algebra".to_string()
        } else {
            label
        })))
    }

    /// A structure-constants spec for `a` in its word basis.
    pub fn from_algebra(a: &Algebra, label: &str) -> Self {
        let ca = a.constants();
        let mut products: Vec<[i64; 4]> = ca
            .triples()
            .into_iter()
            .map(|(i, j, k, c)| [i as i64, j as i64, k as i64, c as i64])
            .collect();
        products.sort_unstable();
        Self {
            kind: Kind::StructureConstants,
            label: Some(label.to_string()),
            characteristic: Some(a.field().characteristic()),
            values: None,
            vertices: None,
            arrows: None,
            relations: None,
            dim: Some(a.dim()),
            products: Some(products),
            unit: Some(a.unit().into_iter().map(i64::from).collect()),
            idempotents: Some(
                a.idempotents()
                    .into_iter()
                    .map(|e| e.into_iter().map(i64::from).collect())
                    .collect(),
            ),
            labels: Some(a.basis_labels().to_vec()),
            caps: None,
        }
    }
}

fn index(i: i64, dim: usize) -> Result<usize, SpecError> {
    usize::try_from(i).ok().filter(|&i| i < dim).ok_or_else(|| {
        SpecError::Algebra(cmfree_core::Error::InvalidAlgebra(format!(
            "basis index {i} out of range 0..{dim}"
        )))
    })
}

/// Named fixtures shipped with the tool, as spec files.
pub fn fixture_specs() -> BTreeMap<&'static str, AlgebraSpecFile> {
    let nak = |kind, values: &[usize], label: Option<&str>| AlgebraSpecFile {
        kind,
        label: label.map(str::to_string),
        characteristic: None,
        values: Some(values.to_vec()),
        vertices: None,
        arrows: None,
        relations: None,
        dim: None,
        products: None,
        unit: None,
        idempotents: None,
        labels: None,
        caps: None,
    };
    let mut out = BTreeMap::new();
    out.insert("ringel-665", nak(Kind::NakayamaCyclic, &[6, 6, 5], None));
    out.insert("ringel-8887", nak(Kind::NakayamaCyclic, &[8, 8, 8, 7], None));
    out.insert(
        "ringel-10-10-9-10-9",
        nak(Kind::NakayamaCyclic, &[10, 10, 9, 10, 9], None),
    );
    out.insert("dual-numbers", nak(Kind::NakayamaCyclic, &[2], Some("k[x]/(x^2)")));
    out.insert("a2", nak(Kind::NakayamaLinear, &[2, 1], Some("A2")));
    out.insert("cyclic-444", nak(Kind::NakayamaCyclic, &[4, 4, 4], None));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nakayama_round_trip() {
        let text = "kind = \"nakayama-cyclic\"\nvalues = [6, 6, 5]\n\n[caps]\nmaxDepth = 16\n";
        let spec = AlgebraSpecFile::parse(text).unwrap();
        assert_eq!(AlgebraSpecFile::parse(&spec.to_toml()).unwrap(), spec);
        assert_eq!(spec.caps(None).max_depth, 16);
        assert_eq!(spec.caps(Some(8)).gl_dim_cap, 8);
        let a = spec.build(spec.field(None).unwrap()).unwrap();
        assert_eq!(a.dim(), 17);
    }

    #[test]
    fn unknown_and_foreign_keys_rejected() {
        let e = AlgebraSpecFile::parse("kind = \"nakayama-linear\"\nvalues = [2, 1]\ncolour = 3\n").unwrap_err();
        assert!(matches!(e, SpecError::Parse(ref m) if m.contains("colour")), "{e}");
        let e = AlgebraSpecFile::parse("kind = \"nakayama-linear\"\nvalues = [2, 1]\ndim = 3\n").unwrap_err();
        assert!(matches!(e, SpecError::ForeignKey { key: "dim", .. }));
        let e = AlgebraSpecFile::parse("kind = \"structure-constants\"\ndim = 1\n").unwrap_err();
        assert!(matches!(e, SpecError::MissingKey { key: "products", .. }));
        let e = AlgebraSpecFile::parse("kind = \"nakayama-cyclic\"\nvalues = [6,\n").unwrap_err();
        assert!(e.to_string().contains("line"), "{e}");
    }

    #[test]
    fn inadmissible_sequence() {
        let spec = AlgebraSpecFile::parse("kind = \"nakayama-cyclic\"\nvalues = [6, 4, 5]\n").unwrap();
        let e = spec.build(PrimeField::default()).unwrap_err();
        assert!(matches!(
            e,
            SpecError::Algebra(cmfree_core::Error::InvalidAdmissibleSequence(_))
        ));
    }

    #[test]
    fn monomial_dialect() {
        let text = r#"
kind = "bound-quiver-monomial"
label = "branched"
vertices = 3
arrows = [
  { name = "a", source = 0, target = 1 },
  { name = "b", source = 1, target = 0 },
  { name = "c", source = 0, target = 2 },
]
relations = [["a", "b"], ["b", "a"]]
"#;
        let spec = AlgebraSpecFile::parse(text).unwrap();
        let a = spec.build(PrimeField::default()).unwrap();
        assert!(a.is_monomial());
        assert_eq!(a.label(), "branched");
        let bad = text.replace("[\"a\", \"b\"]", "[\"a\", \"z\"]");
        let spec = AlgebraSpecFile::parse(&bad).unwrap();
        assert!(matches!(
            spec.build(PrimeField::default()),
            Err(SpecError::UnknownArrow(_))
        ));
    }

    #[test]
    fn structure_constants_round_trip() {
        let a = cmfree_core::fixtures::a2(PrimeField::default());
        let spec = AlgebraSpecFile::from_algebra(&a, "A2 again");
        let text = spec.to_toml();
        let back = AlgebraSpecFile::parse(&text).unwrap();
        assert_eq!(back, spec);
        let b = back.build(back.field(None).unwrap()).unwrap();
        assert_eq!(b.dim(), 3);
        assert_eq!(b.cartan(), a.cartan());
    }
}
