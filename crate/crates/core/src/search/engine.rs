//! Backtracking enumeration of slot assignments under additivity
//! constraints.
//!
//! A problem has `slots` free values, each ranging over the `values`
//! vectors of the codomain. A domain point evaluates to `scale * slot_value`
//! (or 0 for the zero vector). Each constraint `phi(c) = phi(a) + phi(b)` is
//! attached to the deepest slot it reads, so it is tested as soon as it is
//! decidable and a failure prunes the whole subtree below. Assignments are
//! visited in lexicographic order with slot 0 most significant.

use super::tables::VectorOps;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Point {
    slot: u32,
    scale: u64,
}

impl Point {
    pub const ZERO: Point = Point { slot: u32::MAX, scale: 0 };

    pub fn new(slot: usize, scale: u64) -> Self {
        Point { slot: slot as u32, scale }
    }

    fn is_zero(self) -> bool {
        self.slot == u32::MAX
    }

    fn depth(self) -> Option<usize> {
        (!self.is_zero()).then_some(self.slot as usize)
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Constraint {
    pub a: Point,
    pub b: Point,
    pub c: Point,
}

impl Constraint {
    fn depth(&self) -> Option<usize> {
        [self.a, self.b, self.c].iter().filter_map(|p| p.depth()).max()
    }
}

pub(crate) struct Problem {
    slots: usize,
    values: u64,
    one: u64,
    by_depth: Vec<Vec<Constraint>>,
    ops: VectorOps,
}

#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Collect {
    pub failures: bool,
    pub survivors: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub(crate) struct Outcome {
    pub survivors: u64,
    pub failures: u64,
    pub first_failure: Option<Vec<u64>>,
    pub failure_list: Vec<Vec<u64>>,
    pub survivor_list: Vec<Vec<u64>>,
}

impl Outcome {
    /// Concatenation of two outcomes over consecutive assignment ranges.
    fn merge(mut self, other: Outcome) -> Outcome {
        self.survivors += other.survivors;
        self.failures += other.failures;
        if self.first_failure.is_none() {
            self.first_failure = other.first_failure;
        }
        self.failure_list.extend(other.failure_list);
        self.survivor_list.extend(other.survivor_list);
        self
    }
}

impl Problem {
    /// `one` is the rank of the field's 1, so that unit scales skip the
    /// multiplication. Constraints that read no slot are dropped; they hold
    /// trivially as 0 = 0 + 0.
    pub fn new(slots: usize, ops: VectorOps, one: u64, constraints: impl IntoIterator<Item = Constraint>) -> Self {
        let mut by_depth = vec![Vec::new(); slots];
        for c in constraints {
            if let Some(d) = c.depth() {
                by_depth[d].push(c);
            }
        }
        Problem {
            slots,
            values: ops.size(),
            one,
            by_depth,
            ops,
        }
    }

    #[inline]
    fn eval(&self, p: Point, assign: &[u64]) -> u64 {
        if p.is_zero() {
            0
        } else if p.scale == self.one {
            assign[p.slot as usize]
        } else {
            self.ops.scale(p.scale, assign[p.slot as usize])
        }
    }

    #[inline]
    fn consistent(&self, depth: usize, assign: &[u64]) -> bool {
        self.by_depth[depth].iter().all(|c| {
            let lhs = self.eval(c.c, assign);
            let rhs = self.ops.add(self.eval(c.a, assign), self.eval(c.b, assign));
            lhs == rhs
        })
    }

    fn subtree_size(&self, depth: usize) -> u64 {
        self.values.pow((self.slots - depth - 1) as u32)
    }

    fn record_failure(&self, depth: usize, assign: &mut [u64], out: &mut Outcome, collect: Collect) {
        out.failures += self.subtree_size(depth);
        if out.first_failure.is_none() {
            let mut first = assign.to_vec();
            first[depth + 1..].fill(0);
            out.first_failure = Some(first);
        }
        if collect.failures {
            self.expand(depth + 1, assign, &mut out.failure_list);
        }
    }

    fn expand(&self, depth: usize, assign: &mut [u64], sink: &mut Vec<Vec<u64>>) {
        if depth == self.slots {
            sink.push(assign.to_vec());
            return;
        }
        for v in 0..self.values {
            assign[depth] = v;
            self.expand(depth + 1, assign, sink);
        }
    }

    fn descend(&self, depth: usize, assign: &mut [u64], out: &mut Outcome, collect: Collect) {
        if depth == self.slots {
            out.survivors += 1;
            if collect.survivors {
                out.survivor_list.push(assign.to_vec());
            }
            return;
        }
        for v in 0..self.values {
            assign[depth] = v;
            if self.consistent(depth, assign) {
                self.descend(depth + 1, assign, out, collect);
            } else {
                self.record_failure(depth, assign, out, collect);
            }
        }
    }

    /// Plain depth-first enumeration from the root.
    pub fn run_sequential(&self, collect: Collect) -> Outcome {
        let mut out = Outcome::default();
        if self.slots == 0 {
            out.survivors = 1;
            if collect.survivors {
                out.survivor_list.push(Vec::new());
            }
            return out;
        }
        let mut assign = vec![0; self.slots];
        self.descend(0, &mut assign, &mut out, collect);
        out
    }

    /// Enumeration of the subtree whose first `split` slots spell `task` in
    /// base `values`.
    fn run_task(&self, split: usize, task: u64, collect: Collect) -> Outcome {
        let mut assign = vec![0; self.slots];
        let mut rest = task;
        for d in (0..split).rev() {
            assign[d] = rest % self.values;
            rest /= self.values;
        }
        let mut out = Outcome::default();
        for d in 0..split {
            if !self.consistent(d, &assign) {
                // every completion of this task's prefix fails, even though
                // the failure is already decided at depth d
                out.failures += self.subtree_size(split - 1);
                let mut first = assign.clone();
                first[split..].fill(0);
                out.first_failure = Some(first);
                if collect.failures {
                    self.expand(split, &mut assign, &mut out.failure_list);
                }
                return out;
            }
        }
        if split == self.slots {
            out.survivors = 1;
            if collect.survivors {
                out.survivor_list.push(assign);
            }
            return out;
        }
        self.descend(split, &mut assign, &mut out, collect);
        out
    }

    /// Partitions the assignment space by the values of the first `split`
    /// slots and enumerates the parts on `jobs` workers. The merge is
    /// ordered, so the outcome equals [`Problem::run_sequential`].
    pub fn run_partitioned(&self, split: usize, jobs: usize, collect: Collect) -> Outcome {
        let split = split.min(self.slots);
        if split == 0 {
            return self.run_sequential(collect);
        }
        let tasks = self.values.pow(split as u32);
        run_tasks(tasks, jobs, |t| self.run_task(split, t, collect))
    }

    pub fn run(&self, split: usize, jobs: usize, collect: Collect) -> Outcome {
        if jobs <= 1 {
            self.run_sequential(collect)
        } else {
            self.run_partitioned(split, jobs, collect)
        }
    }
}

#[cfg(feature = "parallel")]
fn run_tasks(tasks: u64, jobs: usize, task: impl Fn(u64) -> Outcome + Sync) -> Outcome {
    use rayon::prelude::*;

    let work = || {
        (0..tasks)
            .into_par_iter()
            .map(&task)
            .reduce(Outcome::default, Outcome::merge)
    };
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(work),
        Err(_) => run_tasks_sequential(tasks, task),
    }
}

#[cfg(not(feature = "parallel"))]
fn run_tasks(tasks: u64, _jobs: usize, task: impl Fn(u64) -> Outcome + Sync) -> Outcome {
    run_tasks_sequential(tasks, task)
}

fn run_tasks_sequential(tasks: u64, task: impl Fn(u64) -> Outcome) -> Outcome {
    (0..tasks).map(task).fold(Outcome::default(), Outcome::merge)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::linspace::Space;

    /// Tables `Z_2 -> Z_2`, constrained to additivity: phi(0) = 0 is the
    /// only condition, so 2 of 4 tables survive.
    fn z2_line_problem() -> Problem {
        let line = Space::new(Field::prime(2).unwrap(), 1).unwrap();
        let ops = VectorOps::new(&line);
        let mut cs = Vec::new();
        for a in 0..2u64 {
            for b in a..2u64 {
                let c = (a + b) % 2;
                cs.push(Constraint {
                    a: Point::new(a as usize, 1),
                    b: Point::new(b as usize, 1),
                    c: Point::new(c as usize, 1),
                });
            }
        }
        Problem::new(2, ops, 1, cs)
    }

    #[test]
    fn counts_and_first_failure() {
        let p = z2_line_problem();
        let all = Collect { failures: true, survivors: true };
        let out = p.run_sequential(all);
        assert_eq!((out.survivors, out.failures), (2, 2));
        assert_eq!(out.survivor_list, vec![vec![0, 0], vec![0, 1]]);
        assert_eq!(out.failure_list, vec![vec![1, 0], vec![1, 1]]);
        assert_eq!(out.first_failure, Some(vec![1, 0]));
    }

    #[test]
    fn partitioning_is_invisible() {
        let p = z2_line_problem();
        let all = Collect { failures: true, survivors: true };
        let reference = p.run_sequential(all);
        for split in 0..=3 {
            for jobs in [1, 2, 4] {
                assert_eq!(p.run_partitioned(split, jobs, all), reference, "split {split} jobs {jobs}");
            }
        }
    }
}
