//! Explorer sessions: an initial QP, the mutation history and the QP it
//! leads to.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use clusterbraid_core::exchange::{explore_ball, Seed};
use clusterbraid_core::Qp;
use serde::Serialize;

use crate::export::{GraphJson, PresentationJson, QpJson, SCHEMA_VERSION};
use crate::format::{parse_document, serialize_quiver};
use crate::ops::{self, Kind};
use crate::Error;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StateJson {
    pub v: u32,
    pub id: String,
    pub quiver: QpJson,
    /// The current QP as a quiver document.
    pub document: String,
    /// Mutated vertices, oldest first.
    pub history: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct Session {
    id: String,
    initial: Qp,
    history: Vec<usize>,
    current: Qp,
    /// Last neighbourhood served, keyed by `(radius, cap)`.
    ceg_cache: Option<((usize, usize), GraphJson)>,
}

impl Session {
    pub fn new(id: impl Into<String>, initial: Qp) -> Self {
        Session { id: id.into(), current: initial.clone(), initial, history: Vec::new(), ceg_cache: None }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn current(&self) -> &Qp {
        &self.current
    }

    pub fn history(&self) -> &[usize] {
        &self.history
    }

    pub fn mutate(&mut self, vertex: usize) -> Result<(), Error> {
        self.current = ops::mutate_sequence(&self.current, &[vertex])?;
        self.history.push(vertex);
        self.ceg_cache = None;
        Ok(())
    }

    /// Drops the last mutation and replays the rest from the initial QP.
    pub fn undo(&mut self) -> Result<(), Error> {
        if self.history.pop().is_none() {
            return Err(Error::EmptyHistory);
        }
        self.current = self.replay()?;
        self.ceg_cache = None;
        Ok(())
    }

    pub fn replay(&self) -> Result<Qp, Error> {
        ops::mutate_sequence(&self.initial, &self.history)
    }

    pub fn state(&self) -> StateJson {
        StateJson {
            v: SCHEMA_VERSION,
            id: self.id.clone(),
            quiver: QpJson::from(&self.current),
            document: serialize_quiver(&self.current),
            history: self.history.clone(),
        }
    }

    /// Exchange-graph neighbourhood of the current seed.
    pub fn ceg(&mut self, radius: usize, cap: usize) -> Result<GraphJson, Error> {
        if let Some((key, doc)) = &self.ceg_cache {
            if *key == (radius, cap) {
                return Ok(doc.clone());
            }
        }
        let ball = explore_ball(&Seed::from_quiver(&self.current.quiver), radius, cap)?;
        let doc = GraphJson::from(&ball);
        self.ceg_cache = Some(((radius, cap), doc.clone()));
        Ok(doc)
    }

    pub fn presentation(&self, kind: Kind, simplify: bool, max_vertices: usize) -> Result<PresentationJson, Error> {
        let p = ops::presentation(&self.current, kind, simplify, max_vertices)?;
        Ok(PresentationJson::new(kind.name(), simplify, &p))
    }
}

/// All live sessions. Each session sits behind its own lock.
#[derive(Debug, Default)]
pub struct SessionStore {
    next: AtomicU64,
    sessions: Mutex<HashMap<String, Arc<Mutex<Session>>>>,
}

impl SessionStore {
    pub fn create(&self, document: &str) -> Result<Arc<Mutex<Session>>, Error> {
        let qp = parse_document(document)?;
        let id = format!("s{}", self.next.fetch_add(1, Ordering::Relaxed) + 1);
        let session = Arc::new(Mutex::new(Session::new(id.clone(), qp)));
        self.sessions.lock().expect("session map poisoned").insert(id, session.clone());
        Ok(session)
    }

    pub fn get(&self, id: &str) -> Option<Arc<Mutex<Session>>> {
        self.sessions.lock().expect("session map poisoned").get(id).cloned()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const A2: &str = "quiver n=2\narrow a 1 2\n";

    #[test]
    fn mutate_and_undo() {
        let store = SessionStore::default();
        let s = store.create(A2).unwrap();
        let mut s = s.lock().unwrap();
        let before = s.state();
        s.mutate(1).unwrap();
        assert_eq!(s.state().history, vec![1]);
        assert_eq!(s.state().quiver.arrows[0].source, 2);
        s.undo().unwrap();
        assert_eq!(s.state(), before);
        assert!(matches!(s.undo(), Err(Error::EmptyHistory)));
        assert!(matches!(s.mutate(3), Err(Error::InvalidVertex { vertex: 3, n: 2 })));
        assert_eq!(s.history(), &[] as &[usize]);
    }

    #[test]
    fn neighbourhood_is_cached() {
        let mut s = Session::new("x", parse_document(A2).unwrap());
        let doc = s.ceg(1, 100).unwrap();
        assert_eq!(doc.vertices.len(), 3);
        assert!(!doc.complete);
        assert_eq!(s.ceg(1, 100).unwrap(), doc);
        assert!(s.ceg(5, 100).unwrap().complete);
    }
}
