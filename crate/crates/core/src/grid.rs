//! Wiring-grid configurations over a permutation, crossing resolution,
//! boundary matchings, and the counts attached to them.
//!
//! A configuration pairs a permutation with a set of resolved crossing
//! cells. Cells are (column, row) with column 1..=n left to right and row
//! 1..=n bottom to top; the hook of column i sits in row sigma(i). A
//! horizontal wire runs left of each hook, a vertical wire above it, and
//! cells carrying both are crossing sites until resolved into elbows.

use std::collections::BTreeSet;

use crate::chord::ChordDiagram;
use crate::error::{Error, Result};
use crate::perm::{Permutation, DEFAULT_MAX_N};
use crate::Selection;

/// (column, row), both 1-based.
pub type Cell = (usize, usize);

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CellContent {
    Blank,
    /// The hook of its column: connects west to north.
    Hook,
    /// Horizontal wire only: west to east.
    Horizontal,
    /// Vertical wire only: south to north.
    Vertical,
    /// Unresolved crossing site: west-east over south-north.
    Crossing,
    /// Resolved crossing site: west to south and north to east.
    Elbow,
}

/// Crossing sites of `p`: cells (i, j) whose hook column is further right
/// and hook row further down, i.e. i < p^-1(j) and j > p(i).
pub fn crossings(p: &Permutation) -> BTreeSet<Cell> {
    let n = p.size();
    let pos = p.inverse_positions();
    let mut out = BTreeSet::new();
    for i in 1..=n {
        let pi = p.oneline()[i - 1] as usize;
        for j in (pi + 1)..=n {
            if i < pos[j - 1] {
                out.insert((i, j));
            }
        }
    }
    out
}

/// A permutation together with the set of its already resolved crossings.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GridConfiguration {
    sigma: Permutation,
    resolved: BTreeSet<Cell>,
}

impl GridConfiguration {
    /// Fresh configuration with no crossings resolved.
    pub fn new(sigma: Permutation) -> GridConfiguration {
        GridConfiguration {
            sigma,
            resolved: BTreeSet::new(),
        }
    }

    /// Configuration with the given resolved set, which must consist of
    /// crossing sites of `sigma`.
    pub fn with_resolved(sigma: Permutation, resolved: BTreeSet<Cell>) -> Result<GridConfiguration> {
        let sites = crossings(&sigma);
        if !resolved.is_subset(&sites) {
            return Err(Error::Precondition(
                "resolved cells must be crossing sites of the permutation",
            ));
        }
        Ok(GridConfiguration { sigma, resolved })
    }

    pub fn sigma(&self) -> &Permutation {
        &self.sigma
    }

    pub fn resolved(&self) -> &BTreeSet<Cell> {
        &self.resolved
    }

    pub fn size(&self) -> usize {
        self.sigma.size()
    }

    pub fn content(&self, cell: Cell) -> CellContent {
        let (i, j) = cell;
        let n = self.size();
        if i == 0 || j == 0 || i > n || j > n {
            return CellContent::Blank;
        }
        let pi = self.sigma.oneline()[i - 1] as usize;
        if pi == j {
            return CellContent::Hook;
        }
        let hook_col = self.sigma.inverse_positions()[j - 1];
        let horizontal = i < hook_col;
        let vertical = j > pi;
        match (horizontal, vertical) {
            (false, false) => CellContent::Blank,
            (true, false) => CellContent::Horizontal,
            (false, true) => CellContent::Vertical,
            (true, true) => {
                if self.resolved.contains(&cell) {
                    CellContent::Elbow
                } else {
                    CellContent::Crossing
                }
            }
        }
    }

    /// Crossing sites not yet resolved.
    pub fn unresolved(&self) -> BTreeSet<Cell> {
        crossings(&self.sigma)
            .into_iter()
            .filter(|c| !self.resolved.contains(c))
            .collect()
    }

    pub fn is_fully_resolved(&self) -> bool {
        self.unresolved().is_empty()
    }

    /// Unresolved crossings that are maximal for the order
    /// (i, j) >= (i', j') iff i <= i' and j >= j'.
    pub fn maximal_crossings(&self) -> BTreeSet<Cell> {
        let unresolved = self.unresolved();
        unresolved
            .iter()
            .copied()
            .filter(|&(i, j)| {
                !unresolved
                    .iter()
                    .any(|&(a, b)| (a, b) != (i, j) && a <= i && b >= j)
            })
            .collect()
    }

    fn check_resolvable(&self, c: Cell) -> Result<()> {
        if !self.maximal_crossings().contains(&c) {
            return Err(Error::NotMaximalCrossing(c.0, c.1));
        }
        if self
            .resolved
            .iter()
            .any(|&(a, b)| (a, b) != c && c.0 <= a && c.1 >= b)
        {
            return Err(Error::Precondition(
                "a resolved cell lies strictly below the chosen crossing",
            ));
        }
        Ok(())
    }

    /// Resolves the maximal crossing `c` into an elbow, keeping sigma.
    pub fn smooth(&self, c: Cell) -> Result<GridConfiguration> {
        self.check_resolvable(c)?;
        let mut resolved = self.resolved.clone();
        resolved.insert(c);
        Ok(GridConfiguration {
            sigma: self.sigma.clone(),
            resolved,
        })
    }

    /// Resolves the maximal crossing `c = (i, j)` by swapping the letters
    /// at positions i and p^-1(j), keeping the resolved set.
    pub fn switch(&self, c: Cell) -> Result<GridConfiguration> {
        self.check_resolvable(c)?;
        let (i, j) = c;
        let l = self.sigma.inverse_positions()[j - 1];
        let mut oneline = self.sigma.oneline().to_vec();
        oneline.swap(i - 1, l - 1);
        let sigma = Permutation::from_oneline(oneline)
            .map_err(|e| Error::Internal(format!("switch broke the permutation: {e}")))?;
        let sites = crossings(&sigma);
        if !self.resolved.is_subset(&sites) {
            return Err(Error::Internal(format!(
                "switch at ({i},{j}) dropped a resolved crossing site"
            )));
        }
        Ok(GridConfiguration {
            sigma,
            resolved: self.resolved.clone(),
        })
    }

    /// Boundary matching of a fully resolved configuration. Labels 0..n-1
    /// run up the left edge, labels n..2n-1 along the top left to right.
    pub fn matching(&self) -> Result<Matching> {
        if !self.is_fully_resolved() {
            return Err(Error::Precondition(
                "matching requires a fully resolved configuration",
            ));
        }
        let n = self.size();
        let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(n);
        let mut seen = vec![false; 2 * n];
        for start in 0..2 * n {
            if seen[start] {
                continue;
            }
            let end = self.trace(start)?;
            if end >= 2 * n || seen[end] || end == start {
                return Err(Error::Internal(format!(
                    "strand from {start} ended badly at {end}"
                )));
            }
            seen[start] = true;
            seen[end] = true;
            pairs.push((start.min(end), start.max(end)));
        }
        Matching::new(2 * n, pairs)
    }

    /// Follows the strand from boundary label `start` to its other end.
    fn trace(&self, start: usize) -> Result<usize> {
        let n = self.size();
        // Position state: cell plus the side the strand enters from.
        let (mut i, mut j, mut from) = if start < n {
            (1usize, start + 1, Side::West)
        } else {
            (start - n + 1, n, Side::North)
        };
        for _ in 0..4 * n * n + 4 {
            let exit = match (self.content((i, j)), from) {
                (CellContent::Hook, Side::West) => Side::North,
                (CellContent::Hook, Side::North) => Side::West,
                (CellContent::Horizontal, Side::West) => Side::East,
                (CellContent::Horizontal, Side::East) => Side::West,
                (CellContent::Vertical, Side::North) => Side::South,
                (CellContent::Vertical, Side::South) => Side::North,
                (CellContent::Elbow, Side::West) => Side::South,
                (CellContent::Elbow, Side::South) => Side::West,
                (CellContent::Elbow, Side::North) => Side::East,
                (CellContent::Elbow, Side::East) => Side::North,
                (content, side) => {
                    return Err(Error::Internal(format!(
                        "strand entered ({i},{j}) [{content:?}] from {side:?}"
                    )))
                }
            };
            match exit {
                Side::North => {
                    if j == n {
                        return Ok(n + i - 1);
                    }
                    j += 1;
                    from = Side::South;
                }
                Side::South => {
                    if j == 1 {
                        break;
                    }
                    j -= 1;
                    from = Side::North;
                }
                Side::East => {
                    if i == n {
                        break;
                    }
                    i += 1;
                    from = Side::West;
                }
                Side::West => {
                    if i == 1 {
                        return Ok(j - 1);
                    }
                    i -= 1;
                    from = Side::East;
                }
            }
        }
        Err(Error::Internal(format!(
            "strand from {start} left through the south or east edge"
        )))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Side {
    North,
    South,
    East,
    West,
}

/// Perfect matching of boundary labels 0..2n-1, stored as sorted pairs.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Matching {
    points: usize,
    pairs: Vec<(usize, usize)>,
}

impl Matching {
    /// Validates a perfect matching of 0..points-1 and canonicalizes the
    /// pair order.
    pub fn new(points: usize, pairs: Vec<(usize, usize)>) -> Result<Matching> {
        if points % 2 != 0 || pairs.len() * 2 != points {
            return Err(Error::NotAMatching(format!(
                "{} pairs on {points} points",
                pairs.len()
            )));
        }
        let mut seen = vec![false; points];
        let mut canon: Vec<(usize, usize)> = Vec::with_capacity(pairs.len());
        for (a, b) in pairs {
            if a == b || a >= points || b >= points || seen[a] || seen[b] {
                return Err(Error::NotAMatching(format!("bad pair ({a},{b})")));
            }
            seen[a] = true;
            seen[b] = true;
            canon.push((a.min(b), a.max(b)));
        }
        canon.sort_unstable();
        Ok(Matching {
            points,
            pairs: canon,
        })
    }

    /// The matching {0,1}, {2,3}, ..., {2n-2, 2n-1}.
    pub fn adjacent(n: usize) -> Matching {
        Matching {
            points: 2 * n,
            pairs: (0..n).map(|k| (2 * k, 2 * k + 1)).collect(),
        }
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn to_chord_diagram(&self) -> ChordDiagram {
        ChordDiagram::new(self.points, self.pairs.iter().copied())
            .expect("a perfect matching is a valid chord diagram")
    }
}

impl std::fmt::Display for Matching {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .pairs
            .iter()
            .map(|(a, b)| format!("{{{a},{b}}}"))
            .collect();
        f.write_str(&parts.join(","))
    }
}

/// Matching {0,1}, {2,3}, ... on 2n points.
pub fn m0(n: usize) -> Matching {
    Matching::adjacent(n)
}

/// Boundary matching of a web permutation, with every crossing smoothed.
pub fn web_matching(p: &Permutation) -> Result<Matching> {
    if !p.is_web() {
        return Err(Error::Precondition("web_matching requires a web permutation"));
    }
    GridConfiguration::with_resolved(p.clone(), crossings(p))?.matching()
}

/// Fully resolved configurations reachable from `p` by repeatedly
/// smoothing or switching the selected maximal crossing.
pub fn resolve_leaves(p: &Permutation) -> Result<Vec<GridConfiguration>> {
    resolve_leaves_with(p, Selection::First, DEFAULT_MAX_N)
}

/// Same as [`resolve_leaves`] with an explicit selection strategy and cap.
pub fn resolve_leaves_with(
    p: &Permutation,
    selection: Selection,
    cap: usize,
) -> Result<Vec<GridConfiguration>> {
    let n = p.size();
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    let root = GridConfiguration::new(p.clone());
    let mut leaves = Vec::new();
    let mut stack: Vec<(GridConfiguration, usize)> = vec![(root, usize::MAX)];
    while let Some((g, parent_unresolved)) = stack.pop() {
        let unresolved = g.unresolved().len();
        if unresolved >= parent_unresolved {
            return Err(Error::Internal(
                "resolution step failed to reduce the crossing count".into(),
            ));
        }
        let maximal = g.maximal_crossings();
        let c = match selection {
            Selection::First => maximal.iter().copied().min_by_key(|&(i, j)| (i, usize::MAX - j)),
            Selection::Last => maximal.iter().copied().max_by_key(|&(i, j)| (i, usize::MAX - j)),
        };
        match c {
            None => leaves.push(g),
            Some(c) => {
                stack.push((g.switch(c)?, unresolved));
                stack.push((g.smooth(c)?, unresolved));
            }
        }
    }
    Ok(leaves)
}

/// Set of permutations carried by the resolution leaves of `p`. The
/// leaves are checked to carry pairwise distinct permutations.
pub fn resolve(p: &Permutation) -> Result<BTreeSet<Permutation>> {
    resolve_with(p, Selection::First, DEFAULT_MAX_N)
}

/// Same as [`resolve`] with an explicit selection strategy and cap.
pub fn resolve_with(
    p: &Permutation,
    selection: Selection,
    cap: usize,
) -> Result<BTreeSet<Permutation>> {
    let leaves = resolve_leaves_with(p, selection, cap)?;
    let set: BTreeSet<Permutation> = leaves.iter().map(|g| g.sigma.clone()).collect();
    if set.len() != leaves.len() {
        return Err(Error::Internal("duplicate permutation among leaves".into()));
    }
    Ok(set)
}

/// Resolution leaves of the identity whose boundary matching is the
/// adjacent matching, sorted.
pub fn tilde_webs(n: usize) -> Result<Vec<Permutation>> {
    tilde_webs_capped(n, DEFAULT_MAX_N)
}

/// Same as [`tilde_webs`] with an explicit cap.
pub fn tilde_webs_capped(n: usize, cap: usize) -> Result<Vec<Permutation>> {
    let target = m0(n);
    let mut out = Vec::new();
    for s in resolve_with(&Permutation::identity(n), Selection::First, cap)? {
        if web_matching(&s)? == target {
            out.push(s);
        }
    }
    Ok(out)
}

/// Number of adjacent-matching leaves of the identity starting with k.
pub fn f(n: usize, k: u32) -> Result<usize> {
    f_capped(n, k, DEFAULT_MAX_N)
}

/// Same as [`f`] with an explicit cap.
pub fn f_capped(n: usize, k: u32, cap: usize) -> Result<usize> {
    if k == 0 || k as usize > n {
        return Err(Error::LetterAbsent(k));
    }
    Ok(tilde_webs_capped(n, cap)?
        .iter()
        .filter(|s| s.oneline()[0] == k)
        .count())
}

/// Number of resolution leaves of `p` whose matching is adjacent.
pub fn h(p: &Permutation) -> Result<usize> {
    h_capped(p, DEFAULT_MAX_N)
}

/// Same as [`h`] with an explicit cap.
pub fn h_capped(p: &Permutation, cap: usize) -> Result<usize> {
    let target = m0(p.size());
    let mut count = 0;
    for leaf in resolve_leaves_with(p, Selection::First, cap)? {
        if leaf.matching()? == target {
            count += 1;
        }
    }
    Ok(count)
}

/// Rotates the first k letters one step left: the letter in position 1
/// moves to position k. Requires 1 <= k <= n.
pub fn p_transform(p: &Permutation, k: usize) -> Result<Permutation> {
    if k == 0 || k > p.size() {
        return Err(Error::PositionOutOfRange(k));
    }
    let mut v = p.oneline().to_vec();
    v[..k].rotate_left(1);
    Permutation::from_oneline(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn cells(v: &[(usize, usize)]) -> BTreeSet<Cell> {
        v.iter().copied().collect()
    }

    fn names(v: &[Permutation]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn crossing_sites() {
        assert_eq!(
            crossings(&p("1324")),
            cells(&[(1, 2), (1, 3), (1, 4), (2, 4), (3, 4)])
        );
        // The identity crosses everywhere above the diagonal.
        assert_eq!(crossings(&Permutation::identity(3)).len(), 3);
        assert_eq!(crossings(&Permutation::identity(5)).len(), 10);
        assert!(crossings(&p("4321")).is_empty());
    }

    #[test]
    fn cell_contents() {
        let g = GridConfiguration::new(Permutation::identity(3));
        assert_eq!(g.content((1, 1)), CellContent::Hook);
        assert_eq!(g.content((1, 3)), CellContent::Crossing);
        assert_eq!(g.content((0, 1)), CellContent::Blank);
        let g = GridConfiguration::new(p("213"));
        assert_eq!(g.content((1, 2)), CellContent::Hook);
        assert_eq!(g.content((1, 3)), CellContent::Crossing);
        assert_eq!(g.content((2, 2)), CellContent::Vertical);
        assert_eq!(g.content((1, 1)), CellContent::Horizontal);
        assert_eq!(g.content((3, 1)), CellContent::Blank);
    }

    #[test]
    fn maximal_crossing_sets() {
        let g = GridConfiguration::new(Permutation::identity(3));
        assert_eq!(g.maximal_crossings(), cells(&[(1, 3)]));
        let g = GridConfiguration::with_resolved(
            Permutation::identity(4),
            cells(&[(1, 4)]),
        )
        .unwrap();
        assert_eq!(g.maximal_crossings(), cells(&[(1, 3), (2, 4)]));
    }

    #[test]
    fn smooth_and_switch_examples() {
        let g = GridConfiguration::new(Permutation::identity(3));
        let s = g.smooth((1, 3)).unwrap();
        assert_eq!(s.sigma(), &Permutation::identity(3));
        assert_eq!(s.resolved(), &cells(&[(1, 3)]));
        let t = g.switch((1, 3)).unwrap();
        assert_eq!(t.sigma(), &p("321"));
        assert!(t.resolved().is_empty());
        assert!(g.smooth((1, 2)).is_err());
        assert!(matches!(
            g.switch((2, 3)),
            Err(Error::NotMaximalCrossing(2, 3))
        ));
    }

    #[test]
    fn resolving_the_identity_yields_the_webs() {
        let w3 = resolve(&Permutation::identity(3)).unwrap();
        assert_eq!(
            names(&w3.iter().cloned().collect::<Vec<_>>()),
            ["123", "132", "213", "231", "321"]
        );
        for n in 0..=5 {
            let leaves = resolve(&Permutation::identity(n)).unwrap();
            let webs: BTreeSet<Permutation> = crate::perm::enumerate(n)
                .unwrap()
                .filter(|s| s.is_web())
                .collect();
            assert_eq!(leaves, webs, "n={n}");
        }
        // A crossing-free start resolves to itself.
        assert_eq!(
            resolve(&p("4321")).unwrap().into_iter().collect::<Vec<_>>(),
            vec![p("4321")]
        );
    }

    #[test]
    fn selection_strategy_does_not_change_the_leaf_set() {
        for n in 0..=5 {
            for s in crate::perm::enumerate(n).unwrap() {
                let first = resolve_with(&s, Selection::First, 9).unwrap();
                let last = resolve_with(&s, Selection::Last, 9).unwrap();
                assert_eq!(first, last, "start {s}");
            }
        }
    }

    #[test]
    fn boundary_matchings() {
        assert_eq!(
            web_matching(&p("1324")).unwrap().pairs(),
            [(0, 1), (2, 5), (3, 4), (6, 7)]
        );
        for n in 1..=5 {
            assert_eq!(
                web_matching(&Permutation::identity(n)).unwrap(),
                m0(n),
                "identity n={n}"
            );
        }
        // The reversal has no crossings and nests all strands.
        let rev = Permutation::from_oneline((1..=6u32).rev().collect()).unwrap();
        let nested: Vec<(usize, usize)> = (0..6).map(|k| (k, 11 - k)).collect();
        assert_eq!(web_matching(&rev).unwrap().pairs(), nested);
        assert!(web_matching(&p("312")).is_err());
    }

    #[test]
    fn matchings_are_perfect_for_all_small_webs() {
        for n in 1..=5 {
            for s in crate::perm::enumerate(n).unwrap().filter(|s| s.is_web()) {
                let m = web_matching(&s).unwrap();
                assert_eq!(m.points(), 2 * n);
                assert_eq!(m.pairs().len(), n);
            }
        }
    }

    #[test]
    fn matching_requires_full_resolution() {
        let g = GridConfiguration::new(Permutation::identity(3));
        assert!(g.matching().is_err());
    }

    #[test]
    fn adjacent_matching_leaves_of_the_identity() {
        let tables: [(usize, &[&str]); 6] = [
            (1, &["1"]),
            (2, &["12"]),
            (3, &["123"]),
            (4, &["1234", "3412"]),
            (5, &["12345", "14523", "34125"]),
            (
                6,
                &[
                    "123456", "125634", "145236", "341256", "345612", "364512", "534612",
                    "563412",
                ],
            ),
        ];
        for (n, expected) in tables {
            assert_eq!(names(&tilde_webs(n).unwrap()), *expected, "n={n}");
        }
    }

    #[test]
    fn first_letter_counts() {
        assert_eq!(f(5, 1).unwrap(), 2);
        assert_eq!(f(5, 3).unwrap(), 1);
        assert_eq!(f(6, 1).unwrap(), 3);
        assert_eq!(f(6, 3).unwrap(), 3);
        assert_eq!(f(6, 5).unwrap(), 2);
        assert_eq!(f(1, 1).unwrap(), 1);
        for n in 2..=6 {
            for k in 1..=n as u32 {
                let v = f(n, k).unwrap();
                if k % 2 == 0 || k as usize == n {
                    assert_eq!(v, 0, "f({n},{k})");
                }
            }
        }
        assert!(f(4, 0).is_err());
        assert!(f(4, 5).is_err());
    }

    #[test]
    fn adjacent_leaf_counts() {
        assert_eq!(h(&Permutation::identity(4)).unwrap(), 2);
        assert_eq!(h(&Permutation::identity(5)).unwrap(), 3);
        // h of the identity adds up the first-letter counts.
        for n in 1..=6 {
            let total: usize = (1..=n as u32).map(|k| f(n, k).unwrap()).sum();
            assert_eq!(h(&Permutation::identity(n)).unwrap(), total, "n={n}");
        }
    }

    #[test]
    fn rotation_examples() {
        assert_eq!(p_transform(&Permutation::identity(6), 4).unwrap(), p("234156"));
        assert_eq!(
            p_transform(&Permutation::identity(5), 1).unwrap(),
            Permutation::identity(5)
        );
        assert_eq!(p_transform(&Permutation::identity(4), 4).unwrap(), p("2341"));
        assert!(p_transform(&Permutation::identity(4), 5).is_err());
        assert!(p_transform(&Permutation::identity(4), 0).is_err());
    }

    #[test]
    fn caps_are_enforced() {
        assert!(matches!(
            resolve(&Permutation::identity(10)),
            Err(Error::CapExceeded { n: 10, cap: 9 })
        ));
        assert!(resolve_with(&Permutation::identity(4), Selection::First, 3).is_err());
    }
}
