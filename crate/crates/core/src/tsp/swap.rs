use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// A permutation of city indices, read as a closed cycle.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tour(Vec<usize>);

impl Tour {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let mut seen = order.clone();
        seen.sort_unstable();
        if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Consistency(format!("city {} appears twice in tour", w[0])));
        }
        Ok(Self(order))
    }

    pub(crate) fn from_vec_unchecked(order: Vec<usize>) -> Self {
        debug_assert!(Tour::new(order.clone()).is_ok());
        Self(order)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn contains(&self, city: usize) -> bool {
        self.0.contains(&city)
    }

    /// Cities in ascending order.
    pub fn city_set(&self) -> Vec<usize> {
        let mut s = self.0.clone();
        s.sort_unstable();
        s
    }

    pub(crate) fn swap_in_place(&mut self, op: SwapOperator) {
        self.0.swap(op.i, op.j);
    }
}

impl fmt::Display for Tour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Transposition of two tour positions (stored 0-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SwapOperator {
    i: usize,
    j: usize,
}

impl SwapOperator {
    pub fn new(i: usize, j: usize) -> Result<Self> {
        if i == j {
            return Err(Error::Index(format!(
                "swap operator needs two distinct positions, got {i} twice"
            )));
        }
        Ok(Self { i, j })
    }

    /// `MO(i, j)` with 1-based positions.
    pub fn one_based(i: usize, j: usize) -> Result<Self> {
        if i == 0 || j == 0 {
            return Err(Error::Index("1-based positions start at 1".into()));
        }
        Self::new(i - 1, j - 1)
    }

    pub fn positions(self) -> (usize, usize) {
        (self.i, self.j)
    }

    pub fn positions_one_based(self) -> (usize, usize) {
        (self.i + 1, self.j + 1)
    }
}

impl fmt::Display for SwapOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MO({},{})", self.i + 1, self.j + 1)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SwapSequence(pub Vec<SwapOperator>);

impl SwapSequence {
    pub fn ops(&self) -> &[SwapOperator] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Apply every operator in order.
    pub fn apply_to(&self, tour: &Tour) -> Result<Tour> {
        let mut out = tour.clone();
        for &op in &self.0 {
            check_op(&out, op)?;
            out.swap_in_place(op);
        }
        Ok(out)
    }
}

impl fmt::Display for SwapSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, op) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{op}")?;
        }
        write!(f, "]")
    }
}

fn check_op(tour: &Tour, op: SwapOperator) -> Result<()> {
    let n = tour.len();
    if op.i >= n || op.j >= n {
        return Err(Error::Index(format!("{op} on a tour of {n} cities")));
    }
    Ok(())
}

/// `tour ⊕ op`: exchange the two positions.
pub fn apply(tour: &Tour, op: SwapOperator) -> Result<Tour> {
    check_op(tour, op)?;
    let mut out = tour.clone();
    out.swap_in_place(op);
    Ok(out)
}

/// `target - source`: scan left to right; wherever `source` disagrees with
/// `target`, swap the wanted city into place and record the swap.
pub fn subtract(target: &Tour, source: &Tour) -> Result<SwapSequence> {
    if target.city_set() != source.city_set() {
        return Err(Error::InstanceMismatch(format!("{target} vs {source}")));
    }
    Ok(subtract_unchecked(target.as_slice(), source.as_slice()))
}

pub(crate) fn subtract_unchecked(target: &[usize], source: &[usize]) -> SwapSequence {
    let mut work = source.to_vec();
    let mut at: HashMap<usize, usize> = work.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let mut ops = Vec::new();
    for k in 0..work.len() {
        let want = target[k];
        if work[k] != want {
            let m = at[&want];
            ops.push(SwapOperator { i: k, j: m });
            at.insert(work[k], m);
            at.insert(want, k);
            work.swap(k, m);
        }
    }
    SwapSequence(ops)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RandomStream;
    use proptest::prelude::*;

    fn tour(v: &[usize]) -> Tour {
        Tour::new(v.to_vec()).unwrap()
    }

    fn mo(i: usize, j: usize) -> SwapOperator {
        SwapOperator::one_based(i, j).unwrap()
    }

    #[test]
    fn worked_swap_examples() {
        assert_eq!(
            apply(&tour(&[3, 4, 5, 6, 8]), mo(2, 3)).unwrap(),
            tour(&[3, 5, 4, 6, 8])
        );
        assert_eq!(
            apply(&tour(&[5, 7, 6, 9, 8]), mo(2, 3)).unwrap(),
            tour(&[5, 6, 7, 9, 8])
        );
    }

    #[test]
    fn worked_subtraction_example() {
        let a = tour(&[5, 6, 7, 8, 9]);
        let b = tour(&[6, 7, 5, 9, 8]);
        let s = subtract(&a, &b).unwrap();
        assert_eq!(s.ops(), &[mo(1, 3), mo(2, 3), mo(4, 5)]);
        assert_eq!(s.to_string(), "[MO(1,3), MO(2,3), MO(4,5)]");
        assert_eq!(s.apply_to(&b).unwrap(), a);
    }

    #[test]
    fn identical_tours_subtract_to_nothing() {
        let a = tour(&[2, 0, 1]);
        assert!(subtract(&a, &a).unwrap().is_empty());
    }

    #[test]
    fn errors() {
        assert!(Tour::new(vec![1, 2, 1]).is_err());
        assert!(SwapOperator::new(2, 2).is_err());
        assert!(SwapOperator::one_based(0, 2).is_err());
        assert!(matches!(apply(&tour(&[0, 1, 2]), mo(1, 4)), Err(Error::Index(_))));
        assert!(matches!(
            subtract(&tour(&[0, 1, 2]), &tour(&[0, 1, 3])),
            Err(Error::InstanceMismatch(_))
        ));
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        fn rec(prefix: &mut Vec<usize>, rest: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if rest.is_empty() {
                out.push(prefix.clone());
                return;
            }
            for k in 0..rest.len() {
                let c = rest.remove(k);
                prefix.push(c);
                rec(prefix, rest, out);
                prefix.pop();
                rest.insert(k, c);
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut (0..n).collect(), &mut out);
        out
    }

    #[test]
    fn subtraction_is_exact_for_all_small_pairs() {
        for n in 1..=5 {
            let perms = permutations(n);
            for a in &perms {
                for b in &perms {
                    let (ta, tb) = (tour(a), tour(b));
                    let s = subtract(&ta, &tb).unwrap();
                    assert!(s.len() <= n.saturating_sub(1));
                    assert_eq!(s.apply_to(&tb).unwrap(), ta);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn subtraction_round_trips(n in 2usize..12, seed in any::<u64>()) {
            let mut rng = RandomStream::new(seed);
            let mut a: Vec<usize> = (0..n).map(|k| k * 3 + 1).collect();
            let mut b = a.clone();
            rng.shuffle(&mut a);
            rng.shuffle(&mut b);
            let (ta, tb) = (tour(&a), tour(&b));
            let s = subtract(&ta, &tb).unwrap();
            prop_assert!(s.len() < n);
            prop_assert_eq!(s.apply_to(&tb).unwrap(), ta);
        }

        #[test]
        fn swap_is_an_involution(n in 2usize..10, i in 0usize..10, j in 0usize..10, seed in any::<u64>()) {
            prop_assume!(i < n && j < n && i != j);
            let mut v: Vec<usize> = (0..n).collect();
            RandomStream::new(seed).shuffle(&mut v);
            let t = tour(&v);
            let op = SwapOperator::new(i, j).unwrap();
            prop_assert_eq!(apply(&apply(&t, op).unwrap(), op).unwrap(), t);
        }

        #[test]
        fn any_subsequence_keeps_a_permutation(n in 2usize..10, seed in any::<u64>()) {
            let mut rng = RandomStream::new(seed);
            let mut a: Vec<usize> = (0..n).collect();
            let mut b = a.clone();
            rng.shuffle(&mut a);
            rng.shuffle(&mut b);
            let s = subtract(&tour(&a), &tour(&b)).unwrap();
            let kept: Vec<_> = s.ops().iter().copied().filter(|_| rng.bernoulli(0.5)).collect();
            let out = SwapSequence(kept).apply_to(&tour(&b)).unwrap();
            prop_assert_eq!(out.city_set(), (0..n).collect::<Vec<_>>());
        }
    }
}
