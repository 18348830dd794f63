//! Backtracking search with unit propagation over boolean cell variables.
//!
//! Every clause says "at least one of these variables takes `value`"; a
//! single-variable clause fixes that variable. Branching always tries the
//! variable's default first, so satisfiable instances resolve to the same
//! assignment on every run.

#[derive(Debug, Clone)]
pub(crate) struct Clause {
    pub vars: Vec<usize>,
    pub value: bool,
    /// Caller's tag for the constraint that produced this clause.
    pub origin: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Conflict {
    pub var: usize,
    /// Origin of the clause that could no longer be satisfied.
    pub violated: usize,
    /// Origin of the clause that forced `var` the other way, if it was not a
    /// branching decision.
    pub forced_by: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Solution {
    Sat(Vec<bool>),
    Unsat(Conflict),
}

pub(crate) struct Problem {
    defaults: Vec<bool>,
    clauses: Vec<Clause>,
    occurs: Vec<Vec<usize>>,
}

struct State {
    value: Vec<Option<bool>>,
    reason: Vec<Option<usize>>,
    trail: Vec<usize>,
}

struct Level {
    mark: usize,
    var: usize,
    flipped: bool,
}

impl Problem {
    pub fn new(defaults: Vec<bool>, clauses: Vec<Clause>) -> Self {
        let mut occurs = vec![Vec::new(); defaults.len()];
        for (ci, clause) in clauses.iter().enumerate() {
            for &v in &clause.vars {
                occurs[v].push(ci);
            }
        }
        for list in &mut occurs {
            list.dedup();
        }
        Self {
            defaults,
            clauses,
            occurs,
        }
    }

    pub fn solve(&self) -> Solution {
        let n = self.defaults.len();
        let mut st = State {
            value: vec![None; n],
            reason: vec![None; n],
            trail: Vec::new(),
        };
        // empty clauses cannot be satisfied; report them against no variable
        if let Some(clause) = self.clauses.iter().find(|c| c.vars.is_empty()) {
            return Solution::Unsat(Conflict {
                var: usize::MAX,
                violated: clause.origin,
                forced_by: None,
            });
        }
        for ci in 0..self.clauses.len() {
            let head = st.trail.len();
            let clash = self
                .visit(&mut st, ci, None)
                .or_else(|| self.propagate(&mut st, head));
            if let Some(conflict) = clash {
                return Solution::Unsat(conflict);
            }
        }
        let mut levels: Vec<Level> = Vec::new();
        loop {
            let Some(var) = self.pick_branch(&st) else {
                let values = st
                    .value
                    .iter()
                    .zip(&self.defaults)
                    .map(|(v, d)| v.unwrap_or(*d))
                    .collect();
                return Solution::Sat(values);
            };
            levels.push(Level {
                mark: st.trail.len(),
                var,
                flipped: false,
            });
            let mut conflict = self.assign(&mut st, var, self.defaults[var], None);
            while let Some(clash) = conflict {
                // chronological backtracking to the newest unflipped decision
                loop {
                    let Some(level) = levels.last_mut() else {
                        return Solution::Unsat(clash);
                    };
                    st.undo(level.mark);
                    if level.flipped {
                        levels.pop();
                        continue;
                    }
                    level.flipped = true;
                    break;
                }
                let var = levels.last().unwrap().var;
                conflict = self.assign(&mut st, var, !self.defaults[var], None);
            }
        }
    }

    fn pick_branch(&self, st: &State) -> Option<usize> {
        self.clauses.iter().find_map(|clause| {
            let satisfied = clause
                .vars
                .iter()
                .any(|&v| st.value[v] == Some(clause.value));
            if satisfied {
                None
            } else {
                clause.vars.iter().copied().find(|&v| st.value[v].is_none())
            }
        })
    }

    fn assign(
        &self,
        st: &mut State,
        var: usize,
        value: bool,
        reason: Option<usize>,
    ) -> Option<Conflict> {
        st.value[var] = Some(value);
        st.reason[var] = reason;
        st.trail.push(var);
        self.propagate(st, st.trail.len() - 1)
    }

    fn propagate(&self, st: &mut State, mut head: usize) -> Option<Conflict> {
        while head < st.trail.len() {
            let v = st.trail[head];
            head += 1;
            for &ci in &self.occurs[v] {
                if let Some(conflict) = self.visit(st, ci, Some(v)) {
                    return Some(conflict);
                }
            }
        }
        None
    }

    /// Re-examines one clause; forces its last open variable or reports a
    /// clash. Forced assignments are queued on the trail.
    fn visit(&self, st: &mut State, ci: usize, trigger: Option<usize>) -> Option<Conflict> {
        let clause = &self.clauses[ci];
        let mut open = None;
        let mut open_count = 0;
        for &v in &clause.vars {
            match st.value[v] {
                Some(x) if x == clause.value => return None,
                Some(_) => {}
                None => {
                    open_count += 1;
                    open = Some(v);
                }
            }
        }
        match open_count {
            0 => {
                let var = trigger
                    .or_else(|| {
                        clause
                            .vars
                            .iter()
                            .copied()
                            .find(|&v| st.reason[v].is_some())
                    })
                    .unwrap_or(clause.vars[0]);
                Some(Conflict {
                    var,
                    violated: clause.origin,
                    forced_by: st.reason[var].map(|r| self.clauses[r].origin),
                })
            }
            1 => {
                let v = open.unwrap();
                st.value[v] = Some(clause.value);
                st.reason[v] = Some(ci);
                st.trail.push(v);
                None
            }
            _ => None,
        }
    }
}

impl State {
    fn undo(&mut self, mark: usize) {
        for v in self.trail.drain(mark..) {
            self.value[v] = None;
            self.reason[v] = None;
        }
    }
}
