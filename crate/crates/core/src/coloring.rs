//! Search for {0,1} assignments on a ray set.
//!
//! Under the original definition an assignment must put exactly one 1 in
//! every complete basis and never two 1s on an orthogonal pair. The
//! extended definition keeps only the basis condition. A set with no such
//! assignment is a KS set in the respective sense.

use std::fmt;

use crate::error::{Error, Result};
use crate::rayset::ProblemInstance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DefinitionMode {
    /// Exactly one 1 per basis and at most one 1 per orthogonal pair.
    Original,
    /// Exactly one 1 per basis only.
    Extended,
}

impl fmt::Display for DefinitionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DefinitionMode::Original => "original",
            DefinitionMode::Extended => "extended",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment(Vec<bool>);

impl Assignment {
    pub fn new(values: Vec<bool>) -> Self {
        Assignment(values)
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        Assignment(bits.iter().map(|&b| b != 0).collect())
    }

    pub fn values(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bits: Vec<&str> = self.0.iter().map(|&b| if b { "1" } else { "0" }).collect();
        f.write_str(&bits.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Colorable(Assignment),
    Uncolorable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringResult {
    pub verdict: Verdict,
    /// Branching decisions taken by the search.
    pub nodes_explored: u64,
    pub mode: DefinitionMode,
}

impl ColoringResult {
    pub fn is_colorable(&self) -> bool {
        matches!(self.verdict, Verdict::Colorable(_))
    }

    pub fn witness(&self) -> Option<&Assignment> {
        match &self.verdict {
            Verdict::Colorable(a) => Some(a),
            Verdict::Uncolorable => None,
        }
    }
}

pub fn verify_assignment(
    inst: &ProblemInstance,
    f: &Assignment,
    mode: DefinitionMode,
) -> Result<bool> {
    if f.len() != inst.vertex_count() {
        return Err(Error::LengthMismatch {
            expected: inst.vertex_count(),
            found: f.len(),
        });
    }
    let v = f.values();
    let bases_ok = inst
        .bases()
        .iter()
        .all(|b| b.vertices().iter().filter(|&&u| v[u]).count() == 1);
    let pairs_ok = mode == DefinitionMode::Extended
        || inst.graph().edges().iter().all(|&(a, b)| !(v[a] && v[b]));
    Ok(bases_ok && pairs_ok)
}

const UNSET: u8 = 2;

struct Search<'a> {
    inst: &'a ProblemInstance,
    mode: DefinitionMode,
    values: Vec<u8>,
    trail: Vec<usize>,
    nodes: u64,
}

impl<'a> Search<'a> {
    /// Assigns `v := value` and propagates to a fixed point. Returns false on
    /// conflict; the trail records every assignment for undo.
    fn assign(&mut self, v: usize, value: u8) -> bool {
        let mut queue = vec![(v, value)];
        while let Some((u, val)) = queue.pop() {
            match self.values[u] {
                UNSET => {}
                cur if cur == val => continue,
                _ => return false,
            }
            self.values[u] = val;
            self.trail.push(u);
            if val == 1 {
                for &k in self.inst.bases_of(u) {
                    for &w in self.inst.bases()[k].vertices() {
                        if w != u {
                            queue.push((w, 0));
                        }
                    }
                }
                if self.mode == DefinitionMode::Original {
                    queue.extend(self.inst.graph().neighbors(u).map(|w| (w, 0)));
                }
            } else {
                for &k in self.inst.bases_of(u) {
                    let basis = self.inst.bases()[k].vertices();
                    let mut open = None;
                    let mut open_count = 0;
                    let mut has_one = false;
                    for &w in basis {
                        match self.values[w] {
                            1 => has_one = true,
                            UNSET => {
                                open_count += 1;
                                open = Some(w);
                            }
                            _ => {}
                        }
                    }
                    if has_one {
                        continue;
                    }
                    match open_count {
                        0 => return false,
                        1 => queue.push((open.expect("one open vertex"), 1)),
                        _ => {}
                    }
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        for v in self.trail.drain(mark..) {
            self.values[v] = UNSET;
        }
    }

    fn solve(&mut self, from: usize) -> bool {
        let Some(v) = (from..self.values.len()).find(|&v| self.values[v] == UNSET) else {
            return true;
        };
        for value in [1, 0] {
            self.nodes += 1;
            let mark = self.trail.len();
            if self.assign(v, value) && self.solve(v + 1) {
                return true;
            }
            self.undo(mark);
        }
        false
    }
}

/// Deterministic backtracking search: vertices in ascending order, value 1
/// before 0, with unit propagation over bases (and over orthogonal pairs in
/// original mode).
pub fn check_colorable(inst: &ProblemInstance, mode: DefinitionMode) -> Result<ColoringResult> {
    if inst.basis_count() == 0 {
        return Err(Error::NoBasis);
    }
    let mut search = Search {
        inst,
        mode,
        values: vec![UNSET; inst.vertex_count()],
        trail: Vec::new(),
        nodes: 0,
    };
    let verdict = if search.solve(0) {
        let witness = Assignment(search.values.iter().map(|&x| x == 1).collect());
        debug_assert!(verify_assignment(inst, &witness, mode).unwrap_or(false));
        Verdict::Colorable(witness)
    } else {
        Verdict::Uncolorable
    };
    Ok(ColoringResult {
        verdict,
        nodes_explored: search.nodes,
        mode,
    })
}

pub fn is_ks_set(inst: &ProblemInstance, mode: DefinitionMode) -> Result<bool> {
    Ok(!check_colorable(inst, mode)?.is_colorable())
}
