use std::collections::{BTreeMap, VecDeque};
use std::sync::{Arc, Mutex, MutexGuard};

use super::decompose::{decompose, isomorphism};
use super::resolution::syzygy;
use super::Module;
use crate::algebra::Algebra;
use crate::error::{Error, Result};

pub type ClassId = usize;

struct Entry {
    rep: Module,
    projective: bool,
    syzygy: Option<Vec<(ClassId, usize)>>,
}

/// Registry of isomorphism classes of indecomposable modules over one
/// algebra, with memoized syzygies. Shared freely across threads.
pub struct ClassCache {
    algebra: Arc<Algebra>,
    entries: Mutex<Vec<Entry>>,
}

/// Classes reachable from a module by repeatedly taking syzygies and
/// splitting into indecomposables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    /// classes in breadth-first order
    pub classes: Vec<ClassId>,
    /// depth[i]: number of syzygies needed to reach classes[i]
    pub depth: Vec<usize>,
    /// (X, Y) when Y is a summand of ΩX
    pub edges: Vec<(ClassId, ClassId)>,
    /// false when the depth cap stopped the search before the orbit closed
    pub closed: bool,
}

impl ClassCache {
    pub fn new(algebra: Arc<Algebra>) -> Self {
        Self {
            algebra,
            entries: Mutex::new(Vec::new()),
        }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    fn lock(&self) -> MutexGuard<'_, Vec<Entry>> {
        self.entries.lock().unwrap_or_else(|e| e.into_inner())
    }

    pub fn len(&self) -> usize {
        self.lock().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Class of an indecomposable module, registering it when new.
    pub fn class_of(&self, m: &Module) -> Result<ClassId> {
        if !Arc::ptr_eq(m.algebra(), &self.algebra) && **m.algebra() != *self.algebra {
            return Err(Error::AlgebraMismatch);
        }
        let mut entries = self.lock();
        for (id, e) in entries.iter().enumerate() {
            if e.rep.dims() == m.dims() && isomorphism(&e.rep, m)?.is_some() {
                return Ok(id);
            }
        }
        entries.push(Entry {
            rep: m.clone(),
            projective: m.is_projective(),
            syzygy: None,
        });
        Ok(entries.len() - 1)
    }

    /// Indecomposable summands of M as (class, multiplicity), sorted by class.
    pub fn classify(&self, m: &Module) -> Result<Vec<(ClassId, usize)>> {
        let mut counts = BTreeMap::new();
        for part in decompose(m)?.modules() {
            *counts.entry(self.class_of(&part)?).or_insert(0) += 1;
        }
        Ok(counts.into_iter().collect())
    }

    pub fn representative(&self, c: ClassId) -> Module {
        self.lock()[c].rep.clone()
    }

    pub fn is_projective(&self, c: ClassId) -> bool {
        self.lock()[c].projective
    }

    /// Summands of the syzygy of a class, memoized.
    pub fn syzygy_classes(&self, c: ClassId) -> Result<Vec<(ClassId, usize)>> {
        let rep = {
            let entries = self.lock();
            if let Some(s) = &entries[c].syzygy {
                return Ok(s.clone());
            }
            entries[c].rep.clone()
        };
        let omega = syzygy(&rep).0;
        let parts = if omega.is_zero() {
            Vec::new()
        } else {
            self.classify(&omega)?
        };
        self.lock()[c].syzygy = Some(parts.clone());
        Ok(parts)
    }

    /// Breadth-first closure of the summands of M under syzygy, up to
    /// `max_depth` syzygy steps.
    pub fn syzygy_orbit(&self, m: &Module, max_depth: usize) -> Result<Orbit> {
        let start: Vec<ClassId> = self.classify(m)?.into_iter().map(|(c, _)| c).collect();
        self.orbit_from(&start, max_depth)
    }

    pub fn orbit_from(&self, start: &[ClassId], max_depth: usize) -> Result<Orbit> {
        let mut seen = BTreeMap::new();
        let mut orbit = Orbit {
            classes: Vec::new(),
            depth: Vec::new(),
            edges: Vec::new(),
            closed: true,
        };
        let mut queue = VecDeque::new();
        for &c in start {
            if seen.insert(c, 0).is_none() {
                orbit.classes.push(c);
                orbit.depth.push(0);
                queue.push_back((c, 0));
            }
        }
        while let Some((c, d)) = queue.pop_front() {
            if d >= max_depth {
                if self.syzygy_classes(c)?.iter().any(|(y, _)| !seen.contains_key(y)) {
                    orbit.closed = false;
                }
                continue;
            }
            for (y, _) in self.syzygy_classes(c)? {
                orbit.edges.push((c, y));
                if seen.insert(y, d + 1).is_none() {
                    orbit.classes.push(y);
                    orbit.depth.push(d + 1);
                    queue.push_back((y, d + 1));
                }
            }
        }
        Ok(orbit)
    }
}
