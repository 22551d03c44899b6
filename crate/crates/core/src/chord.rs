//! Chord diagrams on points around a circle, crossing expansion into
//! noncrossing diagrams, and necklace multiplicities.

use std::collections::{BTreeMap, HashMap};

use num::BigUint;

use crate::error::{Error, Result};
use crate::Selection;

/// Default cap on the number of chords for full expansions.
pub const DEFAULT_MAX_CHORDS: usize = 8;

/// Endpoints of one chord, stored with the smaller point first.
pub type Chord = (usize, usize);

/// True when the chords interleave around the circle. Chords sharing an
/// endpoint do not cross.
pub fn crosses(a: Chord, b: Chord) -> bool {
    let (p, q) = (a.0.min(a.1), a.0.max(a.1));
    let (r, s) = (b.0.min(b.1), b.0.max(b.1));
    (p < r && r < q && q < s) || (r < p && p < s && s < q)
}

/// Perfect matching of the points 0..points-1 drawn as chords.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ChordDiagram {
    points: usize,
    chords: Vec<Chord>,
}

impl ChordDiagram {
    /// Validates a perfect matching and canonicalizes chord order.
    pub fn new(points: usize, chords: impl IntoIterator<Item = Chord>) -> Result<ChordDiagram> {
        let mut canon: Vec<Chord> = chords
            .into_iter()
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        canon.sort_unstable();
        if points % 2 != 0 || canon.len() * 2 != points {
            return Err(Error::NotAMatching(format!(
                "{} chords on {points} points",
                canon.len()
            )));
        }
        let mut seen = vec![false; points];
        for &(a, b) in &canon {
            if a == b || b >= points || seen[a] || seen[b] {
                return Err(Error::NotAMatching(format!("bad chord ({a},{b})")));
            }
            seen[a] = true;
            seen[b] = true;
        }
        Ok(ChordDiagram {
            points,
            chords: canon,
        })
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn chords(&self) -> &[Chord] {
        &self.chords
    }

    /// Crossing chord pairs in lexicographic order.
    pub fn crossing_pairs(&self) -> Vec<(Chord, Chord)> {
        let mut out = Vec::new();
        for (k, &a) in self.chords.iter().enumerate() {
            for &b in &self.chords[k + 1..] {
                if crosses(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn crossing_count(&self) -> usize {
        self.crossing_pairs().len()
    }

    pub fn is_noncrossing(&self) -> bool {
        self.crossing_pairs().is_empty()
    }

    /// True for the two noncrossing diagrams whose chords all join
    /// circularly adjacent points.
    pub fn is_necklace(&self) -> bool {
        if self.points == 0 {
            return true;
        }
        self == &necklace_with_ear(self.points, 0).expect("points checked even")
            || self == &necklace_with_ear(self.points, 1).expect("points checked even")
    }

    /// Replaces the crossing pair {a, b} by its two planar splits: with
    /// endpoints p < q < r < s, one diagram joins (p,q), (r,s) and the
    /// other joins (q,r), (p,s).
    pub fn expand(&self, a: Chord, b: Chord) -> Result<(ChordDiagram, ChordDiagram)> {
        let a = (a.0.min(a.1), a.0.max(a.1));
        let b = (b.0.min(b.1), b.0.max(b.1));
        if !self.chords.contains(&a) || !self.chords.contains(&b) {
            return Err(Error::NotACrossing);
        }
        if !crosses(a, b) {
            return Err(Error::NotACrossing);
        }
        let mut ends = [a.0, a.1, b.0, b.1];
        ends.sort_unstable();
        let [p, q, r, s] = ends;
        let rest: Vec<Chord> = self
            .chords
            .iter()
            .copied()
            .filter(|&c| c != a && c != b)
            .collect();
        let mut first = rest.clone();
        first.push((p, q));
        first.push((r, s));
        let mut second = rest;
        second.push((q, r));
        second.push((p, s));
        Ok((
            ChordDiagram::new(self.points, first)?,
            ChordDiagram::new(self.points, second)?,
        ))
    }

    /// Noncrossing diagrams reached by fully expanding crossings, with
    /// multiplicities. The result does not depend on the selection.
    pub fn ncd(&self) -> Result<NcdMultiset> {
        self.ncd_with(Selection::First, DEFAULT_MAX_CHORDS)
    }

    /// Same as [`ncd`](Self::ncd) with an explicit selection and cap.
    pub fn ncd_with(&self, selection: Selection, cap: usize) -> Result<NcdMultiset> {
        if self.chords.len() > cap {
            return Err(Error::CapExceeded {
                n: self.chords.len(),
                cap,
            });
        }
        let mut memo: HashMap<ChordDiagram, NcdMultiset> = HashMap::new();
        expand_fully(self, selection, &mut memo)
    }
}

fn expand_fully(
    d: &ChordDiagram,
    selection: Selection,
    memo: &mut HashMap<ChordDiagram, NcdMultiset>,
) -> Result<NcdMultiset> {
    if let Some(hit) = memo.get(d) {
        return Ok(hit.clone());
    }
    let pairs = d.crossing_pairs();
    let result = if pairs.is_empty() {
        NcdMultiset::singleton(d.clone())
    } else {
        let &(a, b) = match selection {
            Selection::First => pairs.first().unwrap(),
            Selection::Last => pairs.last().unwrap(),
        };
        let (e1, e2) = d.expand(a, b)?;
        // Each split strictly lowers the total crossing count, which
        // bounds the expansion depth.
        if e1.crossing_count() >= pairs.len() || e2.crossing_count() >= pairs.len() {
            return Err(Error::Internal(
                "expansion failed to reduce the crossing count".into(),
            ));
        }
        let mut merged = expand_fully(&e1, selection, memo)?;
        merged.absorb(expand_fully(&e2, selection, memo)?);
        merged
    };
    memo.insert(d.clone(), result.clone());
    Ok(result)
}

/// Multiset of noncrossing diagrams with big-integer multiplicities.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct NcdMultiset {
    counts: BTreeMap<ChordDiagram, BigUint>,
}

impl NcdMultiset {
    fn singleton(d: ChordDiagram) -> NcdMultiset {
        let mut counts = BTreeMap::new();
        counts.insert(d, BigUint::from(1u32));
        NcdMultiset { counts }
    }

    fn absorb(&mut self, other: NcdMultiset) {
        for (d, m) in other.counts {
            *self.counts.entry(d).or_default() += m;
        }
    }

    pub fn multiplicity(&self, d: &ChordDiagram) -> BigUint {
        self.counts.get(d).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }

    pub fn distinct(&self) -> usize {
        self.counts.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ChordDiagram, &BigUint)> {
        self.counts.iter()
    }
}

/// The diagram on 2n points whose n chords all pass through the center:
/// chord j joins j and j + n.
pub fn n_crossing(n: usize) -> ChordDiagram {
    ChordDiagram::new(2 * n, (0..n).map(|j| (j, j + n)))
        .expect("diameters form a perfect matching")
}

/// Diagram on 2n+2 points made of n pairwise crossing long chords plus
/// one extra chord from point 0 that crosses exactly k of them.
pub fn a_diagram(n: usize, k: usize) -> Result<ChordDiagram> {
    if n == 0 {
        return Err(Error::Precondition("a_diagram requires n >= 1"));
    }
    if k > n {
        return Err(Error::PositionOutOfRange(k));
    }
    let mut chords: Vec<Chord> = Vec::with_capacity(n + 1);
    for j in 1..=k {
        chords.push((j, j + n + 1));
    }
    for j in k + 2..=n + 1 {
        chords.push((j, j + n));
    }
    chords.push((0, k + 1));
    let d = ChordDiagram::new(2 * n + 2, chords)?;
    let main: Vec<Chord> = d
        .chords()
        .iter()
        .copied()
        .filter(|&c| c != (0, k + 1))
        .collect();
    for (i, &a) in main.iter().enumerate() {
        for &b in &main[i + 1..] {
            if !crosses(a, b) {
                return Err(Error::Internal(format!(
                    "long chords {a:?} and {b:?} fail to cross"
                )));
            }
        }
    }
    let extra_crossings = main.iter().filter(|&&c| crosses((0, k + 1), c)).count();
    if extra_crossings != k {
        return Err(Error::Internal(format!(
            "extra chord crosses {extra_crossings} long chords, wanted {k}"
        )));
    }
    Ok(d)
}

/// The unique necklace (all chords joining adjacent points) that contains
/// the chord {a, a+1 mod points}.
pub fn necklace_with_ear(points: usize, a: usize) -> Result<ChordDiagram> {
    if points == 0 || points % 2 != 0 {
        return Err(Error::NotAMatching(format!("{points} points")));
    }
    if a >= points {
        return Err(Error::PositionOutOfRange(a));
    }
    let chords: Vec<Chord> = if a % 2 == 0 {
        (0..points / 2).map(|k| (2 * k, 2 * k + 1)).collect()
    } else {
        (0..points / 2)
            .map(|k| (2 * k + 1, (2 * k + 2) % points))
            .collect()
    };
    ChordDiagram::new(points, chords)
}

/// Multiplicity, in the expansion of [`a_diagram`], of the necklace
/// containing the chord {k, k+1}.
pub fn b_plus(n: usize, k: usize) -> Result<BigUint> {
    b_plus_capped(n, k, DEFAULT_MAX_CHORDS)
}

/// Same as [`b_plus`] with an explicit chord cap.
pub fn b_plus_capped(n: usize, k: usize, cap: usize) -> Result<BigUint> {
    let d = a_diagram(n, k)?;
    let leaves = d.ncd_with(Selection::First, cap)?;
    Ok(leaves.multiplicity(&necklace_with_ear(2 * n + 2, k)?))
}

/// Multiplicity, in the expansion of [`a_diagram`], of the necklace
/// containing the chord {k+1, k+2}.
pub fn b_minus(n: usize, k: usize) -> Result<BigUint> {
    b_minus_capped(n, k, DEFAULT_MAX_CHORDS)
}

/// Same as [`b_minus`] with an explicit chord cap.
pub fn b_minus_capped(n: usize, k: usize, cap: usize) -> Result<BigUint> {
    let d = a_diagram(n, k)?;
    let leaves = d.ncd_with(Selection::First, cap)?;
    Ok(leaves.multiplicity(&necklace_with_ear(2 * n + 2, k + 1)?))
}
