//! Undo logs and the logged field setters.

use super::{BackRef, CertError, Certificate};
use crate::graph::VertexId;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(super) enum Change {
    Root(VertexId),
    Parent(VertexId, usize),
    Gamma(VertexId, i64),
    Low(VertexId, i64),
    OnLeft(VertexId, bool),
    Children(VertexId, Vec<VertexId>),
    Lb(VertexId, Vec<BackRef>),
    Ab(VertexId, Vec<VertexId>),
    RemoveLb(VertexId, usize, BackRef),
    RemoveLbRange(VertexId, usize, Vec<BackRef>),
    PopAb(VertexId, VertexId),
    RemoveChild(VertexId, usize, VertexId),
}

/// Record of one update, replayed backwards by [`Certificate::restore`].
#[derive(Debug)]
#[must_use = "an update must be paired with a restore"]
pub struct UndoLog {
    id: u64,
    changes: Vec<Change>,
}

impl UndoLog {
    /// Number of recorded changes.
    pub fn len(&self) -> usize {
        self.changes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.changes.is_empty()
    }

    pub fn id(&self) -> u64 {
        self.id
    }
}

impl Certificate {
    pub(super) fn open_log(&mut self) -> UndoLog {
        let id = self.next_log;
        self.next_log += 1;
        self.open_logs.push(id);
        UndoLog {
            id,
            changes: self.pool.pop().unwrap_or_default(),
        }
    }

    /// Reverts the update that produced `log`. Logs must come back in the
    /// reverse order of their creation.
    pub fn restore(&mut self, mut log: UndoLog) -> Result<(), CertError> {
        let expected = self.open_logs.last().copied();
        if expected != Some(log.id) {
            return Err(CertError::OutOfOrderRestore { expected, got: log.id });
        }
        self.open_logs.pop();
        self.work += log.changes.len() as u64;
        while let Some(c) = log.changes.pop() {
            match c {
                Change::Root(old) => self.root = old,
                Change::Parent(v, old) => self.parent[v] = old,
                Change::Gamma(v, old) => self.gamma[v] = old,
                Change::Low(v, old) => self.low[v] = old,
                Change::OnLeft(v, old) => self.on_left[v] = old,
                Change::Children(v, old) => self.children[v] = old,
                Change::Lb(v, old) => self.lb[v] = old,
                Change::Ab(v, old) => self.ab[v] = old,
                Change::RemoveLb(v, i, b) => self.lb[v].insert(i, b),
                Change::RemoveLbRange(v, i, removed) => {
                    self.lb[v].splice(i..i, removed);
                }
                Change::PopAb(v, a) => self.ab[v].push(a),
                Change::RemoveChild(v, i, c) => self.children[v].insert(i, c),
            }
        }
        self.pool.push(log.changes);
        Ok(())
    }

    fn record(&mut self, log: &mut UndoLog, c: Change) {
        self.work += 1;
        log.changes.push(c);
    }

    pub(super) fn set_root(&mut self, log: &mut UndoLog, v: VertexId) {
        self.record(log, Change::Root(self.root));
        self.root = v;
    }

    pub(super) fn set_parent(&mut self, log: &mut UndoLog, v: VertexId, p: usize) {
        self.record(log, Change::Parent(v, self.parent[v]));
        self.parent[v] = p;
    }

    pub(super) fn set_gamma(&mut self, log: &mut UndoLog, v: VertexId, g: i64) {
        self.record(log, Change::Gamma(v, self.gamma[v]));
        self.gamma[v] = g;
    }

    pub(super) fn set_low(&mut self, log: &mut UndoLog, v: VertexId, l: i64) {
        self.record(log, Change::Low(v, self.low[v]));
        self.low[v] = l;
    }

    pub(super) fn set_on_left(&mut self, log: &mut UndoLog, v: VertexId, b: bool) {
        self.record(log, Change::OnLeft(v, self.on_left[v]));
        self.on_left[v] = b;
    }

    pub(super) fn set_children(&mut self, log: &mut UndoLog, v: VertexId, c: Vec<VertexId>) {
        let old = std::mem::replace(&mut self.children[v], c);
        self.record(log, Change::Children(v, old));
    }

    pub(super) fn set_lb(&mut self, log: &mut UndoLog, v: VertexId, l: Vec<BackRef>) {
        let old = std::mem::replace(&mut self.lb[v], l);
        self.record(log, Change::Lb(v, old));
    }

    pub(super) fn set_ab(&mut self, log: &mut UndoLog, v: VertexId, a: Vec<VertexId>) {
        let old = std::mem::replace(&mut self.ab[v], a);
        self.record(log, Change::Ab(v, old));
    }

    pub(super) fn remove_lb(&mut self, log: &mut UndoLog, v: VertexId, i: usize) {
        let b = self.lb[v].remove(i);
        self.record(log, Change::RemoveLb(v, i, b));
    }

    /// Drops the contiguous run of `lb(v)` entries whose `via` is `child`.
    pub(super) fn remove_lb_via(&mut self, log: &mut UndoLog, v: VertexId, child: VertexId) {
        let list = &self.lb[v];
        let Some(last) = list.iter().rposition(|b| b.via == child) else {
            self.work += list.len() as u64;
            return;
        };
        let len = list[..=last].iter().rev().take_while(|b| b.via == child).count();
        let start = last + 1 - len;
        self.work += (list.len() - start) as u64;
        let removed: Vec<BackRef> = self.lb[v].drain(start..start + len).collect();
        self.record(log, Change::RemoveLbRange(v, start, removed));
    }

    pub(super) fn pop_ab(&mut self, log: &mut UndoLog, v: VertexId) -> Option<VertexId> {
        let a = self.ab[v].pop()?;
        self.record(log, Change::PopAb(v, a));
        Some(a)
    }

    pub(super) fn remove_child(&mut self, log: &mut UndoLog, v: VertexId, child: VertexId) {
        let list = &self.children[v];
        let i = list.iter().rposition(|&c| c == child).expect("child present");
        self.work += (list.len() - i) as u64;
        self.children[v].remove(i);
        self.record(log, Change::RemoveChild(v, i, child));
    }
}
