use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::Serialize;

use super::{Algebra, Arrow, StructureTable, Word};
use crate::error::{Error, Result};
use crate::exactfield::PrimeField;

/// Cap on the number of relation-free paths before a presentation is
/// declared non-admissible.
const MAX_PATH_BASIS: usize = 50_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Cyclic,
    Linear,
}

/// Kupisch series of a Nakayama algebra: `values[i]` is the length of the
/// indecomposable projective at vertex `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AdmissibleSequence {
    pub values: Vec<usize>,
    pub shape: Shape,
}

impl AdmissibleSequence {
    pub fn cyclic(values: Vec<usize>) -> Result<Self> {
        let s = Self {
            values,
            shape: Shape::Cyclic,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn linear(values: Vec<usize>) -> Result<Self> {
        let s = Self {
            values,
            shape: Shape::Linear,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        let c = &self.values;
        let n = c.len();
        if n == 0 {
            return Err(Error::InvalidAdmissibleSequence("empty sequence".into()));
        }
        match self.shape {
            Shape::Cyclic => {
                for i in 0..n {
                    if c[i] < 2 {
                        return Err(Error::InvalidAdmissibleSequence(format!("c_{} = {} < 2", i + 1, c[i])));
                    }
                    let next = c[(i + 1) % n];
                    if next + 1 < c[i] {
                        return Err(Error::InvalidAdmissibleSequence(format!(
                            "c_{} = {} < c_{} - 1 = {}",
                            (i + 1) % n + 1,
                            next,
                            i + 1,
                            c[i] - 1
                        )));
                    }
                }
            }
            Shape::Linear => {
                if c[n - 1] != 1 {
                    return Err(Error::InvalidAdmissibleSequence(format!(
                        "last entry c_{n} = {} must be 1",
                        c[n - 1]
                    )));
                }
                for i in 0..n {
                    if c[i] < 1 {
                        return Err(Error::InvalidAdmissibleSequence(format!("c_{} = 0", i + 1)));
                    }
                    if i + 1 < n && c[i] > c[i + 1] + 1 {
                        return Err(Error::InvalidAdmissibleSequence(format!(
                            "c_{} = {} > c_{} + 1 = {}",
                            i + 1,
                            c[i],
                            i + 2,
                            c[i + 1] + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for AdmissibleSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = self.values.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        match self.shape {
            Shape::Cyclic => write!(f, "({body})"),
            Shape::Linear => write!(f, "A({body})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: usize,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: usize, arrows: Vec<Arrow>) -> Result<Self> {
        let mut names = HashSet::new();
        for a in &arrows {
            if a.source >= vertices || a.target >= vertices {
                return Err(Error::InvalidQuiver(format!(
                    "arrow {} ({} -> {}) leaves the vertex range 0..{vertices}",
                    a.name, a.source, a.target
                )));
            }
            if !names.insert(a.name.clone()) {
                return Err(Error::InvalidQuiver(format!("duplicate arrow name {}", a.name)));
            }
        }
        Ok(Self { vertices, arrows })
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }
}

/// Quiver with monomial relations and its enumerated basis of relation-free paths.
#[derive(Clone, Debug)]
pub struct MonomialPresentation {
    pub field: PrimeField,
    pub quiver: Quiver,
    pub relations: Vec<Vec<usize>>,
    pub path_basis: Vec<Word>,
    pub kupisch: Option<AdmissibleSequence>,
}

impl MonomialPresentation {
    pub fn new(field: PrimeField, quiver: Quiver, relations: Vec<Vec<usize>>) -> Result<Self> {
        for r in &relations {
            if r.len() < 2 {
                return Err(Error::NotAdmissible(format!("relation {r:?} has length < 2")));
            }
            for pair in r.windows(2) {
                let (a, b) = (pair[0], pair[1]);
                if a >= quiver.arrows.len() || b >= quiver.arrows.len() {
                    return Err(Error::InvalidQuiver(format!("relation {r:?} names an unknown arrow")));
                }
                if quiver.arrows[a].target != quiver.arrows[b].source {
                    return Err(Error::NotAdmissible(format!("relation {r:?} is not composable")));
                }
            }
        }
        let path_basis = enumerate_paths(&quiver, &relations)?;
        Ok(Self {
            field,
            quiver,
            relations,
            path_basis,
            kupisch: None,
        })
    }

    pub fn dim(&self) -> usize {
        self.path_basis.len()
    }

    /// Multiplies out the path basis into an [`Algebra`].
    pub fn assemble(&self) -> Result<Algebra> {
        let words = self.path_basis.clone();
        let d = words.len();
        let index: HashMap<(usize, &[usize]), usize> = words
            .iter()
            .enumerate()
            .map(|(i, w)| ((w.source, w.arrows.as_slice()), i))
            .collect();
        let mut entries = vec![Vec::new(); d * d];
        for (i, u) in words.iter().enumerate() {
            for (j, w) in words.iter().enumerate() {
                if u.source != w.target {
                    continue;
                }
                let mut cat = w.arrows.clone();
                cat.extend_from_slice(&u.arrows);
                if let Some(&k) = index.get(&(w.source, cat.as_slice())) {
                    entries[i * d + j] = vec![(k as u32, 1)];
                }
            }
        }
        let label = match &self.kupisch {
            Some(seq) => format!("Nakayama{seq}"),
            None => "monomial".to_string(),
        };
        Algebra::from_words(
            self.field,
            label,
            self.quiver.vertices,
            self.quiver.arrows.clone(),
            words,
            StructureTable::new(d, entries),
            self.kupisch.clone(),
        )
    }
}

fn contains_relation(path: &[usize], relations: &[Vec<usize>]) -> bool {
    relations
        .iter()
        .any(|r| r.len() <= path.len() && path.windows(r.len()).any(|w| w == r.as_slice()))
}

/// Relation-free paths, grouped by source vertex, each group by length and
/// then lexicographically by arrow ids.
fn enumerate_paths(quiver: &Quiver, relations: &[Vec<usize>]) -> Result<Vec<Word>> {
    let mut out = Vec::new();
    for v in 0..quiver.vertices {
        let mut layer = vec![Word::vertex(v)];
        while !layer.is_empty() {
            out.extend(layer.iter().cloned());
            if out.len() > MAX_PATH_BASIS {
                return Err(Error::NotAdmissible(format!(
                    "more than {MAX_PATH_BASIS} relation-free paths; the relations do not bound path length"
                )));
            }
            let mut next = Vec::new();
            for w in &layer {
                for (a, arrow) in quiver.arrows.iter().enumerate() {
                    if arrow.source != w.target {
                        continue;
                    }
                    let mut arrows = w.arrows.clone();
                    arrows.push(a);
                    // only suffixes can newly contain a relation
                    let suffix_hit = relations.iter().any(|r| arrows.ends_with(r));
                    if suffix_hit {
                        continue;
                    }
                    debug_assert!(!contains_relation(&arrows, relations));
                    next.push(Word {
                        source: w.source,
                        target: arrow.target,
                        arrows,
                    });
                }
            }
            layer = next;
        }
    }
    Ok(out)
}

/// The Nakayama presentation of an admissible sequence: arrows `i -> i+1`
/// (cyclically for the cyclic shape) and relations the paths of length `c_i`
/// starting at `i`, so the projective at `i` has length `c_i`.
pub fn nakayama(seq: &AdmissibleSequence, field: PrimeField) -> Result<MonomialPresentation> {
    seq.validate()?;
    let n = seq.len();
    let c = &seq.values;
    // arrow out of vertex i, if any; a linear c_i = 1 means vertex i is a sink
    let mut arrow_of = vec![None; n];
    let mut arrows = Vec::new();
    for i in 0..n {
        let present = match seq.shape {
            Shape::Cyclic => true,
            Shape::Linear => i + 1 < n && c[i] >= 2,
        };
        if present {
            arrow_of[i] = Some(arrows.len());
            arrows.push(Arrow {
                name: format!("a{i}"),
                source: i,
                target: (i + 1) % n,
            });
        }
    }
    let mut relations = Vec::new();
    for (i, &len) in c.iter().enumerate() {
        let path: Option<Vec<usize>> = (0..len).map(|k| arrow_of[(i + k) % n]).collect();
        let Some(path) = path else { continue };
        if seq.shape == Shape::Linear && i + len >= n {
            continue;
        }
        relations.push(path);
    }
    let quiver = Quiver::new(n, arrows)?;
    let mut pres = MonomialPresentation::new(field, quiver, relations)?;
    pres.kupisch = Some(seq.clone());
    Ok(pres)
}
