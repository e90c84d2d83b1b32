//! d-separation by reachability ("Bayes ball").

use std::collections::VecDeque;

use super::structure::Structure;
use crate::BayesError;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Direction {
    /// Entered the node from one of its children.
    Up,
    /// Entered the node from one of its parents.
    Down,
}

impl Structure {
    /// True iff every trail between `x` and `y` is blocked by `given`.
    pub fn d_separated(&self, x: &str, y: &str, given: &[&str]) -> Result<bool, BayesError> {
        let xi = self.index_of(x)?;
        let yi = self.index_of(y)?;
        let mut observed = vec![false; self.len()];
        for g in given {
            observed[self.index_of(g)?] = true;
        }
        if xi == yi {
            return Err(BayesError::InvalidSeparationQuery(x.to_string()));
        }
        if observed[xi] || observed[yi] {
            let name = if observed[xi] { x } else { y };
            return Err(BayesError::InvalidSeparationQuery(name.to_string()));
        }
        Ok(!self.reachable(xi, &observed)[yi])
    }

    /// Variables with an active trail from `source` given the observed set.
    fn reachable(&self, source: usize, observed: &[bool]) -> Vec<bool> {
        let n = self.len();

        // Observed variables and their ancestors: a collider is active iff
        // it lies in this set.
        let mut ancestral = vec![false; n];
        let mut stack: Vec<usize> = (0..n).filter(|&i| observed[i]).collect();
        while let Some(v) = stack.pop() {
            if ancestral[v] {
                continue;
            }
            ancestral[v] = true;
            stack.extend(self.parents(v).iter().copied());
        }

        let mut visited_up = vec![false; n];
        let mut visited_down = vec![false; n];
        let mut reached = vec![false; n];
        let mut queue = VecDeque::from([(source, Direction::Up)]);
        while let Some((v, dir)) = queue.pop_front() {
            let seen = match dir {
                Direction::Up => &mut visited_up[v],
                Direction::Down => &mut visited_down[v],
            };
            if *seen {
                continue;
            }
            *seen = true;
            if !observed[v] {
                reached[v] = true;
            }
            match dir {
                Direction::Up if !observed[v] => {
                    queue.extend(self.parents(v).iter().map(|&p| (p, Direction::Up)));
                    queue.extend(self.children(v).iter().map(|&c| (c, Direction::Down)));
                }
                Direction::Up => {}
                Direction::Down => {
                    if !observed[v] {
                        queue.extend(self.children(v).iter().map(|&c| (c, Direction::Down)));
                    }
                    if ancestral[v] {
                        queue.extend(self.parents(v).iter().map(|&p| (p, Direction::Up)));
                    }
                }
            }
        }
        reached
    }
}
