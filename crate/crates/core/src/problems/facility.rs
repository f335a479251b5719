//! UFL and p-Median: branch over facilities with an optimistic cost bound.

use super::enumerate::Sink;
use super::*;

pub(super) fn ufl(f: &Facility, sink: &mut Sink) -> Result<()> {
    let mut s = Search { f, open: Some(&f.open), max_open: usize::MAX, state: vec![None; f.facilities()] };
    s.rec(0, sink)
}

pub(super) fn p_median(f: &Facility, sink: &mut Sink) -> Result<()> {
    let mut s = Search { f, open: None, max_open: f.p, state: vec![None; f.facilities()] };
    s.rec(0, sink)
}

struct Search<'a> {
    f: &'a Facility,
    open: Option<&'a [i64]>,
    max_open: usize,
    state: Vec<Option<bool>>,
}

impl Search<'_> {
    /// Cost of the best completion, ignoring the cardinality limit.
    fn bound(&self) -> Option<i64> {
        let f = self.f;
        let mut total = 0i64;
        if let Some(open) = self.open {
            for (i, st) in self.state.iter().enumerate() {
                match st {
                    Some(true) => total += open[i],
                    None if open[i] < 0 => total += open[i],
                    _ => {}
                }
            }
        }
        for j in 0..f.clients {
            let best = (0..f.facilities())
                .filter(|&i| self.state[i] != Some(false))
                .map(|i| f.cost[i][j])
                .min()?;
            total += best;
        }
        Some(total)
    }

    fn rec(&mut self, i: usize, sink: &mut Sink) -> Result<()> {
        match self.bound() {
            Some(b) if b <= self.f.k => {}
            _ => return Ok(()),
        }
        if i == self.state.len() {
            return sink.push_indices((0..i).filter(|&x| self.state[x] == Some(true)));
        }
        let opened = self.state.iter().filter(|s| **s == Some(true)).count();
        if opened < self.max_open {
            self.state[i] = Some(true);
            self.rec(i + 1, sink)?;
        }
        self.state[i] = Some(false);
        self.rec(i + 1, sink)?;
        self.state[i] = None;
        Ok(())
    }
}
