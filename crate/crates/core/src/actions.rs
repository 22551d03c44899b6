//! Letter-indexed involutions on words and permutations: the valley
//! exchange on plain words, its block-respecting variant on permutations
//! without double descents, min-max trees with their position-indexed
//! involutions, and the alternating relabeling built from them.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::perm::{
    is_andre, is_up_down, letter_kinds, lmi_positions, rmi_positions, LetterKind, Permutation,
    Word,
};

/// Factorization w = w1 w2 x w3 w4, where w2 and w3 are the maximal
/// contiguous runs of letters larger than x adjacent to x.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct XFactorization {
    pub w1: Word,
    pub w2: Word,
    pub x: u32,
    pub w3: Word,
    pub w4: Word,
}

pub fn x_factorization(w: &[u32], x: u32) -> Result<XFactorization> {
    let p = w
        .iter()
        .position(|&a| a == x)
        .ok_or(Error::LetterAbsent(x))?;
    let mut b = p;
    while b > 0 && w[b - 1] > x {
        b -= 1;
    }
    let mut e = p + 1;
    while e < w.len() && w[e] > x {
        e += 1;
    }
    Ok(XFactorization {
        w1: Word::new(w[..b].to_vec())?,
        w2: Word::new(w[b..p].to_vec())?,
        x,
        w3: Word::new(w[p + 1..e].to_vec())?,
        w4: Word::new(w[e..].to_vec())?,
    })
}

/// Valley exchange at x: swaps the runs around x, w1 w2 x w3 w4 into
/// w1 w3 x w2 w4. An involution, and exchanges at different letters
/// commute.
pub fn fs_phi(w: &[u32], x: u32) -> Result<Word> {
    let parts = x_factorization(w, x)?;
    let mut out = Vec::with_capacity(w.len());
    out.extend_from_slice(&parts.w1);
    out.extend_from_slice(&parts.w3);
    out.push(x);
    out.extend_from_slice(&parts.w2);
    out.extend_from_slice(&parts.w4);
    Word::new(out)
}

/// Applies [`fs_phi`] once for every letter in `xs`, in increasing order.
pub fn fs_phi_set(w: &[u32], xs: &BTreeSet<u32>) -> Result<Word> {
    let mut cur = w.to_vec();
    for &x in xs {
        cur = fs_phi(&cur, x)?.into_letters();
    }
    Word::new(cur)
}

/// Andre test through run maxima: at every letter x the run left of x
/// must stay below the run right of x, i.e. max(w2 x) <= max(x w3).
pub fn is_andre_xfact(w: &[u32]) -> bool {
    w.iter().all(|&x| {
        let parts = x_factorization(w, x).expect("letter taken from w");
        let left = parts.w2.iter().copied().max().unwrap_or(0).max(x);
        let right = parts.w3.iter().copied().max().unwrap_or(0).max(x);
        left <= right
    })
}

/// Block form around the letter 1: alpha blocks before it, each starting
/// at a left-to-right minimum, beta blocks after it, each ending at a
/// right-to-left minimum.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BiBasic {
    pub alpha: Vec<Word>,
    pub beta: Vec<Word>,
}

impl BiBasic {
    /// Concatenates alpha blocks, the letter 1, then beta blocks.
    pub fn to_oneline(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for b in &self.alpha {
            out.extend_from_slice(b);
        }
        out.push(1);
        for b in &self.beta {
            out.extend_from_slice(b);
        }
        out
    }
}

pub fn bi_basic(p: &Permutation) -> Result<BiBasic> {
    let w = p.oneline();
    if w.is_empty() {
        return Err(Error::Precondition("block form needs the letter 1"));
    }
    let pos1 = w.iter().position(|&a| a == 1).expect("1 is present");
    let prefix = &w[..pos1];
    let suffix = &w[pos1 + 1..];
    let mut alpha = Vec::new();
    let starts = lmi_positions(prefix);
    for (k, &s) in starts.iter().enumerate() {
        let end = starts.get(k + 1).copied().unwrap_or(prefix.len());
        alpha.push(Word::new(prefix[s..end].to_vec())?);
    }
    let mut beta = Vec::new();
    let ends = rmi_positions(suffix);
    let mut begin = 0;
    for &e in &ends {
        beta.push(Word::new(suffix[begin..=e].to_vec())?);
        begin = e + 1;
    }
    Ok(BiBasic { alpha, beta })
}

/// Valley letters other than 1; exactly the letters moved by
/// [`bfs_psi`].
pub fn valley_support(p: &Permutation) -> BTreeSet<u32> {
    p.valley_letters().into_iter().filter(|&a| a != 1).collect()
}

/// Block-respecting valley exchange at x on a permutation without double
/// descents. Block leaders and block closers hop across the letter 1 with
/// their run structure adjusted; interior valleys fall back to
/// [`fs_phi`]; other letters are fixed.
pub fn bfs_psi(p: &Permutation, x: u32) -> Result<Permutation> {
    let n = p.size();
    if x == 0 || x as usize > n {
        return Err(Error::LetterAbsent(x));
    }
    if p.has_double_descent() {
        return Err(Error::Precondition("permutation has a double descent"));
    }
    let blocks = bi_basic(p)?;
    let double_ascents: BTreeSet<u32> = letter_kinds(p.oneline())
        .iter()
        .zip(p.oneline())
        .filter(|(k, _)| **k == LetterKind::DoubleAscent)
        .map(|(_, &a)| a)
        .collect();

    if let Some(idx) = blocks.alpha.iter().position(|b| b[0] == x) {
        // The leader of an alpha block moves to the beta side.
        let block = &blocks.alpha[idx];
        let moves: BTreeSet<u32> = block
            .iter()
            .copied()
            .filter(|a| double_ascents.contains(a))
            .collect();
        let shifted = fs_phi_set(block, &moves)?.reversed();
        if shifted.last() != Some(&x) {
            return Err(Error::Internal("moved block does not close with x".into()));
        }
        let mut alpha = blocks.alpha.clone();
        alpha.remove(idx);
        let mut beta = blocks.beta.clone();
        let at = beta
            .iter()
            .filter(|b| b.last().copied().unwrap_or(0) < x)
            .count();
        beta.insert(at, shifted);
        let out = Permutation::from_oneline(BiBasic { alpha, beta }.to_oneline())?;
        debug_assert!(!out.has_double_descent());
        return Ok(out);
    }

    if let Some(idx) = blocks
        .beta
        .iter()
        .position(|b| b.len() >= 2 && b.last() == Some(&x))
    {
        // The closer of a beta block moves to the alpha side.
        let block = &blocks.beta[idx];
        let moves: BTreeSet<u32> = block
            .iter()
            .copied()
            .filter(|a| double_ascents.contains(a))
            .collect();
        let shifted = fs_phi_set(block, &moves)?.reversed();
        if shifted.first() != Some(&x) {
            return Err(Error::Internal("moved block does not open with x".into()));
        }
        let mut beta = blocks.beta.clone();
        beta.remove(idx);
        let mut alpha = blocks.alpha.clone();
        let at = alpha
            .iter()
            .filter(|b| b.first().copied().unwrap_or(0) > x)
            .count();
        alpha.insert(at, shifted);
        let out = Permutation::from_oneline(BiBasic { alpha, beta }.to_oneline())?;
        debug_assert!(!out.has_double_descent());
        return Ok(out);
    }

    if x != 1 && valley_support(p).contains(&x) {
        let out = Permutation::from_oneline(fs_phi(p.oneline(), x)?.into_letters())?;
        debug_assert!(!out.has_double_descent());
        return Ok(out);
    }

    Ok(p.clone())
}

/// Applies [`bfs_psi`] once per letter of `xs`, in increasing order.
pub fn bfs_psi_set(p: &Permutation, xs: &BTreeSet<u32>) -> Result<Permutation> {
    let mut cur = p.clone();
    for &x in xs {
        cur = bfs_psi(&cur, x)?;
    }
    Ok(cur)
}

/// Closure of `p` under all the exchanges: 2^|valley_support| elements.
pub fn bfs_orbit(p: &Permutation) -> Result<BTreeSet<Permutation>> {
    let n = p.size();
    let mut orbit = BTreeSet::new();
    let mut queue = vec![p.clone()];
    orbit.insert(p.clone());
    while let Some(q) = queue.pop() {
        for x in 1..=n as u32 {
            let r = bfs_psi(&q, x)?;
            if orbit.insert(r.clone()) {
                queue.push(r);
            }
        }
    }
    Ok(orbit)
}

/// True when p starts with 1 and every beta block is Andre once its
/// closing minimum is removed.
pub fn is_representative_form(p: &Permutation) -> Result<bool> {
    if p.size() == 0 || p.oneline()[0] != 1 {
        return Ok(false);
    }
    let blocks = bi_basic(p)?;
    debug_assert!(blocks.alpha.is_empty());
    Ok(blocks
        .beta
        .iter()
        .all(|b| is_andre(&b[..b.len() - 1])))
}

/// The unique orbit element in representative form.
pub fn orbit_representative(p: &Permutation) -> Result<Permutation> {
    let mut found = None;
    for q in bfs_orbit(p)? {
        if is_representative_form(&q)? {
            if found.is_some() {
                return Err(Error::Internal("two representatives in one orbit".into()));
            }
            found = Some(q);
        }
    }
    found.ok_or_else(|| Error::Internal("orbit without a representative".into()))
}

/// Reads each beta block of a representative-form permutation of 1..=n as
/// a cycle, shifting every letter down by one; returns the permutation of
/// 1..=n-1 with those cycles.
pub fn c_map(p: &Permutation) -> Result<Permutation> {
    let n = p.size();
    if n == 0 || p.oneline()[0] != 1 {
        return Err(Error::Precondition("c_map needs a permutation starting with 1"));
    }
    let blocks = bi_basic(p)?;
    let cycles: Vec<Vec<u32>> = blocks
        .beta
        .iter()
        .map(|b| b.iter().map(|&a| a - 1).collect())
        .collect();
    Permutation::from_cycles(n - 1, &cycles)
}

/// Binary tree on the letters of a word: the root is the earlier of the
/// minimum and the maximum, subtrees are built from the two sides.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MinMaxTree {
    label: u32,
    left: Option<Box<MinMaxTree>>,
    right: Option<Box<MinMaxTree>>,
}

impl MinMaxTree {
    pub fn label(&self) -> u32 {
        self.label
    }

    pub fn left(&self) -> Option<&MinMaxTree> {
        self.left.as_deref()
    }

    pub fn right(&self) -> Option<&MinMaxTree> {
        self.right.as_deref()
    }

    pub fn size(&self) -> usize {
        1 + self.left().map_or(0, MinMaxTree::size) + self.right().map_or(0, MinMaxTree::size)
    }

    pub fn inorder(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.size());
        self.inorder_into(&mut out);
        out
    }

    fn inorder_into(&self, out: &mut Vec<u32>) {
        if let Some(l) = self.left() {
            l.inorder_into(out);
        }
        out.push(self.label);
        if let Some(r) = self.right() {
            r.inorder_into(out);
        }
    }

    /// Nodes with two children.
    pub fn two_child_nodes(&self) -> usize {
        let here = usize::from(self.left.is_some() && self.right.is_some());
        here + self.left().map_or(0, MinMaxTree::two_child_nodes)
            + self.right().map_or(0, MinMaxTree::two_child_nodes)
    }

    /// Nodes with exactly one child.
    pub fn one_child_nodes(&self) -> usize {
        let here = usize::from(self.left.is_some() != self.right.is_some());
        here + self.left().map_or(0, MinMaxTree::one_child_nodes)
            + self.right().map_or(0, MinMaxTree::one_child_nodes)
    }

    /// True when every label is smaller than all labels below it.
    pub fn is_increasing(&self) -> bool {
        let below_left = self.left().map_or(true, |l| {
            self.label < l.min_label() && l.is_increasing()
        });
        let below_right = self.right().map_or(true, |r| {
            self.label < r.min_label() && r.is_increasing()
        });
        below_left && below_right
    }

    fn min_label(&self) -> u32 {
        let mut m = self.label;
        if let Some(l) = self.left() {
            m = m.min(l.min_label());
        }
        if let Some(r) = self.right() {
            m = m.min(r.min_label());
        }
        m
    }

    pub fn same_shape(&self, other: &MinMaxTree) -> bool {
        let left = match (self.left(), other.left()) {
            (None, None) => true,
            (Some(a), Some(b)) => a.same_shape(b),
            _ => false,
        };
        let right = match (self.right(), other.right()) {
            (None, None) => true,
            (Some(a), Some(b)) => a.same_shape(b),
            _ => false,
        };
        left && right
    }

    /// Inclusive 1-based inorder span of the subtree rooted at each
    /// inorder position.
    fn spans(&self) -> Vec<(usize, usize)> {
        let mut out = vec![(0, 0); self.size()];
        self.spans_into(0, &mut out);
        out
    }

    fn spans_into(&self, offset: usize, out: &mut Vec<(usize, usize)>) -> usize {
        let left_size = self
            .left()
            .map_or(0, |l| l.spans_into(offset, out));
        let my_pos = offset + left_size + 1;
        let right_size = self
            .right()
            .map_or(0, |r| r.spans_into(my_pos, out));
        out[my_pos - 1] = (offset + 1, my_pos + right_size);
        left_size + 1 + right_size
    }
}

/// Builds the tree of a nonempty word with distinct letters.
pub fn min_max_tree(w: &[u32]) -> Result<MinMaxTree> {
    if w.is_empty() {
        return Err(Error::Precondition("empty word has no tree"));
    }
    Word::new(w.to_vec())?;
    Ok(build_tree(w))
}

fn build_tree(w: &[u32]) -> MinMaxTree {
    let jmin = w
        .iter()
        .enumerate()
        .min_by_key(|(_, &a)| a)
        .map(|(i, _)| i)
        .unwrap();
    let jmax = w
        .iter()
        .enumerate()
        .max_by_key(|(_, &a)| a)
        .map(|(i, _)| i)
        .unwrap();
    let j = jmin.min(jmax);
    MinMaxTree {
        label: w[j],
        left: (j > 0).then(|| Box::new(build_tree(&w[..j]))),
        right: (j + 1 < w.len()).then(|| Box::new(build_tree(&w[j + 1..]))),
    }
}

/// Shape-preserving involution at inorder position i: the closure of node
/// i (the node plus its right subtree) trades its extreme label for the
/// opposite extreme, the other labels shifting rank-preservingly.
pub fn hr_phi(t: &MinMaxTree, i: usize) -> Result<MinMaxTree> {
    let w = t.inorder();
    let n = w.len();
    if i == 0 || i > n {
        return Err(Error::PositionOutOfRange(i));
    }
    let (_, b) = t.spans()[i - 1];
    let seg = &w[i - 1..b];
    let minv = *seg.iter().min().unwrap();
    let maxv = *seg.iter().max().unwrap();
    let node = seg[0];
    let new_node = if node == minv {
        maxv
    } else if node == maxv {
        minv
    } else {
        return Err(Error::Internal(format!(
            "node {node} is not extreme in its closure"
        )));
    };
    let mut old_rest: Vec<u32> = seg[1..].to_vec();
    old_rest.sort_unstable();
    let mut new_rest: Vec<u32> = seg
        .iter()
        .copied()
        .filter(|&a| a != new_node)
        .collect();
    new_rest.sort_unstable();
    let mut w2 = w.clone();
    w2[i - 1] = new_node;
    for pos in i..b {
        let rank = old_rest.binary_search(&w[pos]).expect("letter from segment");
        w2[pos] = new_rest[rank];
    }
    let out = min_max_tree(&w2)?;
    if !out.same_shape(t) {
        return Err(Error::Internal("relabeling changed the tree shape".into()));
    }
    Ok(out)
}

/// Applies [`hr_phi`] once per position in `is`, in increasing order.
pub fn hr_phi_set(t: &MinMaxTree, is: &BTreeSet<usize>) -> Result<MinMaxTree> {
    let mut cur = t.clone();
    for &i in is {
        cur = hr_phi(&cur, i)?;
    }
    Ok(cur)
}

fn alternation_positions(t: &MinMaxTree) -> BTreeSet<usize> {
    t.spans()
        .iter()
        .enumerate()
        .filter(|(k, &(a, b))| (k + 1) % 2 == 0 && (a, b) != (k + 1, k + 1))
        .map(|(k, _)| k + 1)
        .collect()
}

fn lambda_core(w: &[u32]) -> Result<Word> {
    if w.len() <= 1 {
        return Word::new(w.to_vec());
    }
    let t = min_max_tree(w)?;
    let s = alternation_positions(&t);
    Word::new(hr_phi_set(&t, &s)?.inorder())
}

/// Turns an Andre word into an up-down word with the same first letter by
/// flipping every interior node at an even inorder position.
pub fn lambda(w: &[u32]) -> Result<Word> {
    if !is_andre(w) {
        return Err(Error::Precondition("lambda requires an Andre word"));
    }
    let out = lambda_core(w)?;
    debug_assert!(is_up_down(&out));
    Ok(out)
}

/// Inverse of [`lambda`]: same flips, starting from an up-down word.
pub fn lambda_inv(w: &[u32]) -> Result<Word> {
    if !is_up_down(w) {
        return Err(Error::Precondition("lambda_inv requires an up-down word"));
    }
    let out = lambda_core(w)?;
    debug_assert!(is_andre(&out));
    Ok(out)
}

/// Cycle-by-cycle [`lambda`]: maps a web permutation to a cycle-up-down
/// permutation with the same fixed points and cycle supports.
pub fn lambda_web(p: &Permutation) -> Result<Permutation> {
    if !p.is_web() {
        return Err(Error::Precondition("lambda_web requires a web permutation"));
    }
    let cycles: Vec<Vec<u32>> = p
        .cycles()
        .iter()
        .map(|c| lambda(c).map(Word::into_letters))
        .collect::<Result<_>>()?;
    Permutation::from_cycles(p.size(), &cycles)
}
