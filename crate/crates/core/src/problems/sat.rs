use super::enumerate::Sink;
use super::*;

/// Backtracking over variables in index order; a clause is tested as soon as
/// its last variable is assigned.
pub(super) fn enumerate(f: &Cnf, sink: &mut Sink) -> Result<()> {
    let mut closing = vec![Vec::new(); f.num_vars];
    let mut unit_false = false;
    for (j, c) in f.clauses.iter().enumerate() {
        match c.iter().map(|l| l.var).max() {
            Some(v) => closing[v].push(j),
            None => unit_false = true,
        }
    }
    if unit_false {
        return Ok(());
    }
    let mut assign = vec![false; f.num_vars];
    rec(f, &closing, 0, &mut assign, sink)
}

fn rec(f: &Cnf, closing: &[Vec<usize>], v: usize, assign: &mut [bool], sink: &mut Sink) -> Result<()> {
    if v == f.num_vars {
        return sink.push_indices((0..v).map(|i| Lit { var: i, neg: !assign[i] }.index()));
    }
    for value in [true, false] {
        assign[v] = value;
        let ok = closing[v]
            .iter()
            .all(|&j| f.clauses[j].iter().any(|l| assign[l.var] != l.neg));
        if ok {
            rec(f, closing, v + 1, assign, sink)?;
        }
    }
    Ok(())
}
