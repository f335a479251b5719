//! Number problems through one engine: choose items with total price at
//! least `need` and total weight at most `cap`, optionally forcing an item.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::Zero;

use super::enumerate::{Mode, Sink};
use super::*;

struct Engine<'a> {
    prices: &'a [BigUint],
    weights: &'a [BigUint],
    order: Vec<usize>,
    suffix_price: Vec<BigUint>,
    failed: HashSet<(usize, BigUint, BigUint)>,
    chosen: Vec<usize>,
}

fn run(
    prices: &[BigUint],
    weights: &[BigUint],
    forced: Option<usize>,
    need: BigUint,
    cap: BigUint,
    sink: &mut Sink,
) -> Result<()> {
    let (mut need, mut cap) = (need, cap);
    let mut chosen = Vec::new();
    if let Some(f) = forced {
        if weights[f] > cap {
            return Ok(());
        }
        cap -= &weights[f];
        need = if prices[f] >= need { BigUint::zero() } else { need - &prices[f] };
        chosen.push(f);
    }
    let mut order: Vec<usize> = (0..prices.len()).filter(|&i| Some(i) != forced).collect();
    order.sort_by(|&a, &b| weights[b].cmp(&weights[a]).then(prices[b].cmp(&prices[a])).then(a.cmp(&b)));
    let mut suffix_price = vec![BigUint::zero(); order.len() + 1];
    for i in (0..order.len()).rev() {
        suffix_price[i] = &suffix_price[i + 1] + &prices[order[i]];
    }
    let mut e = Engine { prices, weights, order, suffix_price, failed: HashSet::new(), chosen };
    e.rec(0, need, cap, sink)?;
    Ok(())
}

impl Engine<'_> {
    fn rec(&mut self, i: usize, need: BigUint, cap: BigUint, sink: &mut Sink) -> Result<bool> {
        if need > self.suffix_price[i] {
            return Ok(false);
        }
        if i == self.order.len() {
            sink.push_indices(self.chosen.iter().copied())?;
            return Ok(true);
        }
        let key = (i, need, cap);
        if self.failed.contains(&key) {
            return Ok(false);
        }
        let (_, need, cap) = key;
        let item = self.order[i];
        let mut found = false;
        if self.weights[item] <= cap {
            let p = &self.prices[item];
            let n2 = if *p >= need { BigUint::zero() } else { &need - p };
            self.chosen.push(item);
            found |= self.rec(i + 1, n2, &cap - &self.weights[item], sink)?;
            self.chosen.pop();
        }
        found |= self.rec(i + 1, need.clone(), cap.clone(), sink)?;
        if !found {
            self.failed.insert((i, need, cap));
        }
        Ok(found)
    }
}

pub(super) fn subset_sum(s: &SubsetSum, sink: &mut Sink) -> Result<()> {
    run(&s.items, &s.items, None, s.target.clone(), s.target.clone(), sink)
}

pub(super) fn knapsack(k: &Knapsack, mode: Mode, sink: &mut Sink) -> Result<()> {
    let need = match mode {
        Mode::Solutions => k.min_price.clone(),
        Mode::Feasible => BigUint::zero(),
    };
    run(&k.prices, &k.weights, None, need, k.capacity.clone(), sink)
}

pub(super) fn partition(p: &Partition, sink: &mut Sink) -> Result<()> {
    if p.items.is_empty() {
        return sink.push_indices([]);
    }
    let total: BigUint = p.items.iter().sum();
    if total.bit(0) {
        return Ok(());
    }
    let half: BigUint = total >> 1usize;
    run(&p.items, &p.items, Some(0), half.clone(), half, sink)
}

pub(super) fn scheduling(s: &Scheduling, mode: Mode, sink: &mut Sink) -> Result<()> {
    if s.jobs.is_empty() {
        return sink.push_indices([]);
    }
    let total: BigUint = s.jobs.iter().sum();
    let need = if total > s.deadline { &total - &s.deadline } else { BigUint::zero() };
    let cap = match mode {
        Mode::Solutions => s.deadline.clone(),
        Mode::Feasible => total,
    };
    run(&s.jobs, &s.jobs, Some(0), need, cap, sink)
}
