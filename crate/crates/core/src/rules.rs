//! Compositions, attaching rules and the closed families of mollifier patterns.
//!
//! [`compose`] turns a composition into `(δ, P)` with
//! `H*_n[s] = δ Σ_{T ∈ expand(P)} 𝓗_n[T]`. It peels the composition left to
//! right into blocks `({2}^a, {1}^l)`, `({2}^b, c)` and a terminal `({2}^a)`,
//! starts from the base pattern of the last block and attaches the others
//! right to left.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expansion::expand_string;
use crate::index::{boxplus, delta, oplus, Shift, SignedIndex, SignedString};
use crate::triple::{PatternTriple, Slot};

/// A nonempty string of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyComposition);
        }
        if entries.contains(&0) {
            return Err(Error::NonPositiveEntry(0));
        }
        Ok(Self(entries))
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> u64 {
        self.0.iter().map(|&x| u64::from(x)).sum()
    }

    /// First entry at least 2, so the infinite sums converge.
    pub fn is_zeta_admissible(&self) -> bool {
        self.0[0] >= 2
    }

    pub fn delta(&self) -> i32 {
        delta(&self.0).unwrap()
    }

    pub fn to_signed(&self) -> SignedString {
        SignedString::from_magnitudes(&self.0)
    }

    /// All compositions of exactly `weight`, in lexicographic order.
    pub fn all_of_weight(weight: u32) -> Vec<Composition> {
        fn rec(left: u32, cur: &mut Vec<u32>, out: &mut Vec<Composition>) {
            if left == 0 {
                out.push(Composition(cur.clone()));
                return;
            }
            for x in 1..=left {
                cur.push(x);
                rec(left - x, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if weight > 0 {
            rec(weight, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Composition {
    type Err = Error;

    /// Comma-separated positive integers; `k^e` repeats `k` e times (`2^0` is empty).
    fn from_str(src: &str) -> Result<Self> {
        let mut out = Vec::new();
        for item in src.split(',') {
            let item = item.trim();
            let (base, count) = match item.split_once('^') {
                Some((b, e)) => (b.trim(), e.trim()),
                None => (item, "1"),
            };
            let bad = || Error::Parse(format!("invalid composition entry `{item}`"));
            let base: u32 = base.parse().map_err(|_| bad())?;
            let count: usize = count.parse().map_err(|_| bad())?;
            if base == 0 {
                return Err(Error::NonPositiveEntry(0));
            }
            out.extend(std::iter::repeat(base).take(count));
        }
        Composition::new(out)
    }
}

/// A block of a composition together with the attaching rule it triggers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BlockToken {
    /// `({2}^a)`, `a >= 1`.
    Twos { a: u32 },
    /// `({2}^a, {1}^l)`, `l >= 1`.
    TwosOnes { a: u32, l: u32 },
    /// `({2}^b, c)`, `c >= 3`.
    TwosC { b: u32, c: u32 },
    /// `(c, {1}^l)`, `c >= 3`, `l >= 1`.
    COnes { c: u32, l: u32 },
}

impl BlockToken {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidParameter(format!("{self:?}: {m}")));
        match *self {
            BlockToken::Twos { a } if a == 0 => bad("a must be at least 1"),
            BlockToken::TwosOnes { l, .. } if l == 0 => bad("l must be at least 1"),
            BlockToken::TwosC { c, .. } if c < 3 => bad("c must be at least 3"),
            BlockToken::COnes { c, l } if c < 3 || l == 0 => bad("need c >= 3 and l >= 1"),
            _ => Ok(()),
        }
    }

    /// The composition entries this block stands for.
    pub fn entries(&self) -> Vec<u32> {
        let rep = |x: u32, n: u32| std::iter::repeat(x).take(n as usize);
        match *self {
            BlockToken::Twos { a } => rep(2, a).collect(),
            BlockToken::TwosOnes { a, l } => rep(2, a).chain(rep(1, l)).collect(),
            BlockToken::TwosC { b, c } => rep(2, b).chain([c]).collect(),
            BlockToken::COnes { c, l } => std::iter::once(c).chain(rep(1, l)).collect(),
        }
    }

    /// The sign δ of a composition ending in this block.
    pub fn delta(&self) -> i32 {
        match self {
            BlockToken::TwosOnes { .. } | BlockToken::COnes { .. } => 1,
            _ => -1,
        }
    }
}

fn plain(k: u32) -> SignedIndex {
    SignedIndex::plain(k)
}

fn bar(k: u32) -> SignedIndex {
    SignedIndex::bar(k)
}

fn repeat_slot(slot: Slot, n: u32) -> impl Iterator<Item = Slot> {
    std::iter::repeat(slot).take(n as usize)
}

/// Slots prepended by a block in front of an existing pattern, and the ⊞
/// shift applied to the old leading `r` (`None` for rules that do not touch it).
fn prefix(block: BlockToken) -> (Vec<Slot>, Option<i64>) {
    let th = Shift::Theta;
    let i = Shift::Int;
    match block {
        BlockToken::Twos { .. } => (Vec::new(), None),
        BlockToken::TwosOnes { a, l } => {
            let mut v = vec![(plain(2 * a + 1), a + 1, i(2))];
            v.extend(repeat_slot((plain(1), 1, i(0)), l - 1));
            (v, Some(-2))
        }
        BlockToken::TwosC { b, c } => {
            let mut v = vec![(bar(2 * b + 2), b + 1, i(1))];
            v.extend(repeat_slot((plain(1), 0, th), c - 3));
            (v, Some(-1))
        }
        BlockToken::COnes { c, l } => {
            let mut v = vec![(bar(2), 1, i(1))];
            v.extend(repeat_slot((plain(1), 0, th), c - 3));
            v.push((bar(2), 1, i(1)));
            v.extend(repeat_slot((plain(1), 1, i(0)), l - 1));
            (v, Some(-2))
        }
    }
}

/// Pattern of a composition consisting of `block` alone.
pub fn base(block: BlockToken) -> Result<(i32, PatternTriple)> {
    block.validate()?;
    let slots = match block {
        BlockToken::Twos { a } => vec![(bar(2 * a), a, Shift::Int(1))],
        BlockToken::TwosC { b, c } => {
            let mut v = vec![(bar(2 * b + 2), b + 1, Shift::Int(1))];
            v.extend(repeat_slot((plain(1), 0, Shift::Theta), c - 2));
            v
        }
        _ => prefix(block).0,
    };
    Ok((block.delta(), PatternTriple::from_slots(slots)))
}

/// Applies the attaching rule of `block` to the pattern of the remaining string.
pub fn attach(block: BlockToken, state: (i32, PatternTriple)) -> Result<(i32, PatternTriple)> {
    block.validate()?;
    let (delta, pattern) = state;
    let mut rest = pattern.into_slots().slots().collect::<Vec<_>>();
    if rest.is_empty() {
        return Err(Error::EmptyPattern(format!("{block:?}")));
    }
    match block {
        BlockToken::Twos { a } => {
            rest[0].0 = oplus(plain(2 * a), rest[0].0);
            rest[0].1 += a;
        }
        BlockToken::TwosC { .. } => {
            rest[0].0 = oplus(rest[0].0, bar(1));
        }
        _ => {}
    }
    let (mut out, shift) = prefix(block);
    if let Some(d) = shift {
        rest[0].2 = boxplus(rest[0].2, Shift::Int(d));
    }
    out.extend(rest);
    Ok((delta, PatternTriple::from_slots(out)))
}

/// Composes a base block with further blocks attached right to left; the
/// blocks are listed in string order, the last one being the base.
pub fn compose_segmentation(blocks: &[BlockToken]) -> Result<(i32, PatternTriple)> {
    let (last, init) = blocks.split_last().ok_or(Error::EmptyComposition)?;
    let mut state = base(*last)?;
    for &b in init.iter().rev() {
        state = attach(b, state)?;
    }
    Ok(state)
}

/// The canonical left-to-right peel into maximal runs.
pub fn canonical_blocks(s: &Composition) -> Vec<BlockToken> {
    let e = s.entries();
    let mut out = Vec::new();
    let mut i = 0;
    while i < e.len() {
        let start = i;
        while i < e.len() && e[i] == 2 {
            i += 1;
        }
        let a = (i - start) as u32;
        if i == e.len() {
            out.push(BlockToken::Twos { a });
        } else if e[i] == 1 {
            let ones = i;
            while i < e.len() && e[i] == 1 {
                i += 1;
            }
            out.push(BlockToken::TwosOnes {
                a,
                l: (i - ones) as u32,
            });
        } else {
            out.push(BlockToken::TwosC { b: a, c: e[i] });
            i += 1;
        }
    }
    out
}

/// `(δ(s), P)` with `H*_n[s] = δ Σ_{T ∈ expand(P)} 𝓗_n[T]`.
pub fn compose(s: &Composition) -> Result<(i32, PatternTriple)> {
    compose_segmentation(&canonical_blocks(s))
}

/// Every way of cutting `s` into blocks (each block kind at every position
/// where its entries match).
pub fn segmentations(s: &Composition) -> Vec<Vec<BlockToken>> {
    fn rec(e: &[u32], cur: &mut Vec<BlockToken>, out: &mut Vec<Vec<BlockToken>>) {
        if e.is_empty() {
            out.push(cur.clone());
            return;
        }
        let twos = e.iter().take_while(|&&x| x == 2).count();
        let mut cands = Vec::new();
        for a in 0..=twos as u32 {
            if a >= 1 {
                cands.push(BlockToken::Twos { a });
            }
            let after = &e[a as usize..];
            if let Some(&c) = after.first() {
                if c >= 3 {
                    cands.push(BlockToken::TwosC { b: a, c });
                }
            }
            let ones = after.iter().take_while(|&&x| x == 1).count() as u32;
            for l in 1..=ones {
                cands.push(BlockToken::TwosOnes { a, l });
            }
        }
        if e[0] >= 3 {
            let ones = e[1..].iter().take_while(|&&x| x == 1).count() as u32;
            for l in 1..=ones {
                cands.push(BlockToken::COnes { c: e[0], l });
            }
        }
        for b in cands {
            let n = b.entries().len();
            cur.push(b);
            rec(&e[n..], cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(s.entries(), &mut Vec::new(), &mut out);
    out
}

/// Closed-form families of compositions with explicitly known patterns.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// `({2}^{a_1},1,…,{2}^{a_ℓ},1)` followed by `{2}^{tail}`.
    TwoOne { a: Vec<u32>, tail: u32 },
    /// `({2}^{a_1},c_1,…,{2}^{a_ℓ},c_ℓ,{2}^{tail})`; blocks are `(a_j, c_j)`.
    TwoC2 { blocks: Vec<(u32, u32)>, tail: u32 },
    /// `({2}^{b_1},c_1,{2}^{a_1},1,…)`, `ℓ >= 1`; blocks are `(b_j, c_j, a_j)`.
    TwoC21 { blocks: Vec<(u32, u32, u32)> },
    /// `({2}^{a_0},1,{2}^{b_1},c_1,{2}^{a_1},1,…)`, `ℓ >= 0`.
    TwoOneTwoC21 { a0: u32, blocks: Vec<(u32, u32, u32)> },
    /// [`Family::TwoC21`] followed by `{2}^{tail}`, `tail >= 1`.
    TwoC212 { blocks: Vec<(u32, u32, u32)>, tail: u32 },
    /// [`Family::TwoOneTwoC21`] followed by `{2}^{tail}`, `tail >= 1`.
    TwoOneTwoC212 { a0: u32, blocks: Vec<(u32, u32, u32)>, tail: u32 },
    /// `({2}^a,{1}^l)`.
    TwosOnes { a: u32, l: u32 },
    /// `(c,{1}^l)`.
    COnes { c: u32, l: u32 },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::TwoOne { .. } => "two-one",
            Family::TwoC2 { .. } => "2c2",
            Family::TwoC21 { .. } => "2c21",
            Family::TwoOneTwoC21 { .. } => "212c21",
            Family::TwoC212 { .. } => "2c212",
            Family::TwoOneTwoC212 { .. } => "212c212",
            Family::TwosOnes { .. } => "2a1l",
            Family::COnes { .. } => "c1l",
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidParameter(format!("{}: {m}", self.name())));
        let cs_ok = |b: &[(u32, u32, u32)]| b.iter().all(|x| x.1 >= 3);
        match self {
            Family::TwoOne { a, .. } if a.is_empty() => bad("needs at least one (2^a,1) block"),
            Family::TwoC2 { blocks, tail } => {
                if blocks.iter().any(|x| x.1 < 3) {
                    bad("c_j must be at least 3")
                } else if blocks.is_empty() && *tail == 0 {
                    bad("empty composition")
                } else {
                    Ok(())
                }
            }
            Family::TwoC21 { blocks } | Family::TwoC212 { blocks, .. } if blocks.is_empty() => {
                bad("needs l >= 1")
            }
            Family::TwoC21 { blocks }
            | Family::TwoOneTwoC21 { blocks, .. }
            | Family::TwoC212 { blocks, .. }
            | Family::TwoOneTwoC212 { blocks, .. }
                if !cs_ok(blocks) =>
            {
                bad("c_j must be at least 3")
            }
            Family::TwoC212 { tail: 0, .. } | Family::TwoOneTwoC212 { tail: 0, .. } => {
                bad("trailing run of 2s must be nonempty")
            }
            Family::TwosOnes { l: 0, .. } => bad("l must be at least 1"),
            Family::COnes { c, l } if *c < 3 || *l == 0 => bad("need c >= 3 and l >= 1"),
            _ => Ok(()),
        }
    }

    /// The composition this family instance denotes.
    pub fn composition(&self) -> Result<Composition> {
        self.validate()?;
        let mut e = Vec::new();
        let twos = |e: &mut Vec<u32>, n: u32| e.extend(std::iter::repeat(2).take(n as usize));
        let bca = |e: &mut Vec<u32>, blocks: &[(u32, u32, u32)]| {
            for &(b, c, a) in blocks {
                e.extend(std::iter::repeat(2).take(b as usize));
                e.push(c);
                e.extend(std::iter::repeat(2).take(a as usize));
                e.push(1);
            }
        };
        match self {
            Family::TwoOne { a, tail } => {
                for &x in a {
                    twos(&mut e, x);
                    e.push(1);
                }
                twos(&mut e, *tail);
            }
            Family::TwoC2 { blocks, tail } => {
                for &(a, c) in blocks {
                    twos(&mut e, a);
                    e.push(c);
                }
                twos(&mut e, *tail);
            }
            Family::TwoC21 { blocks } => bca(&mut e, blocks),
            Family::TwoOneTwoC21 { a0, blocks } => {
                twos(&mut e, *a0);
                e.push(1);
                bca(&mut e, blocks);
            }
            Family::TwoC212 { blocks, tail } => {
                bca(&mut e, blocks);
                twos(&mut e, *tail);
            }
            Family::TwoOneTwoC212 { a0, blocks, tail } => {
                twos(&mut e, *a0);
                e.push(1);
                bca(&mut e, blocks);
                twos(&mut e, *tail);
            }
            Family::TwosOnes { a, l } => {
                twos(&mut e, *a);
                e.extend(std::iter::repeat(1).take(*l as usize));
            }
            Family::COnes { c, l } => {
                e.push(*c);
                e.extend(std::iter::repeat(1).take(*l as usize));
            }
        }
        Composition::new(e)
    }

    /// All instances of every family whose composition has weight at most `max_weight`.
    pub fn enumerate(max_weight: u32) -> Vec<Family> {
        let mut out = Vec::new();
        let w = max_weight;
        // (b, c, a) blocks with weight 2b + c + 2a + 1
        fn bca_lists(budget: u32) -> Vec<(Vec<(u32, u32, u32)>, u32)> {
            let mut res = vec![(Vec::new(), 0)];
            let mut i = 0;
            while i < res.len() {
                let (cur, used) = res[i].clone();
                for c in 3..=budget.saturating_sub(used + 1) {
                    for b in 0..=(budget - used - c - 1) / 2 {
                        for a in 0..=(budget - used - c - 1 - 2 * b) / 2 {
                            let mut next = cur.clone();
                            next.push((b, c, a));
                            res.push((next, used + 2 * b + c + 2 * a + 1));
                        }
                    }
                }
                i += 1;
            }
            res
        }
        fn ac_lists(budget: u32) -> Vec<(Vec<(u32, u32)>, u32)> {
            let mut res = vec![(Vec::new(), 0)];
            let mut i = 0;
            while i < res.len() {
                let (cur, used) = res[i].clone();
                for c in 3..=budget.saturating_sub(used) {
                    for a in 0..=(budget - used - c) / 2 {
                        let mut next = cur.clone();
                        next.push((a, c));
                        res.push((next, used + 2 * a + c));
                    }
                }
                i += 1;
            }
            res
        }
        fn a_lists(budget: u32) -> Vec<(Vec<u32>, u32)> {
            let mut res = vec![(Vec::new(), 0)];
            let mut i = 0;
            while i < res.len() {
                let (cur, used) = res[i].clone();
                for a in 0..=budget.saturating_sub(used + 1) / 2 {
                    if used + 2 * a + 1 <= budget {
                        let mut next = cur.clone();
                        next.push(a);
                        res.push((next, used + 2 * a + 1));
                    }
                }
                i += 1;
            }
            res
        }
        for (a, used) in a_lists(w) {
            if a.is_empty() {
                continue;
            }
            for tail in 0..=(w - used) / 2 {
                out.push(Family::TwoOne { a: a.clone(), tail });
            }
        }
        for (blocks, used) in ac_lists(w) {
            for tail in 0..=(w - used) / 2 {
                if !blocks.is_empty() || tail > 0 {
                    out.push(Family::TwoC2 {
                        blocks: blocks.clone(),
                        tail,
                    });
                }
            }
        }
        for (blocks, used) in bca_lists(w) {
            if !blocks.is_empty() {
                out.push(Family::TwoC21 { blocks: blocks.clone() });
                for tail in 1..=(w - used) / 2 {
                    out.push(Family::TwoC212 {
                        blocks: blocks.clone(),
                        tail,
                    });
                }
            }
            if used < w {
                for a0 in 0..=(w - used - 1) / 2 {
                    let used0 = used + 2 * a0 + 1;
                    out.push(Family::TwoOneTwoC21 {
                        a0,
                        blocks: blocks.clone(),
                    });
                    for tail in 1..=(w - used0) / 2 {
                        out.push(Family::TwoOneTwoC212 {
                            a0,
                            blocks: blocks.clone(),
                            tail,
                        });
                    }
                }
            }
        }
        for a in 0..=w / 2 {
            for l in 1..=w - 2 * a {
                out.push(Family::TwosOnes { a, l });
            }
        }
        for c in 3..w {
            for l in 1..=w - c {
                out.push(Family::COnes { c, l });
            }
        }
        out
    }
}

fn bca_slots(blocks: &[(u32, u32, u32)], first_r: i64, out: &mut Vec<Slot>) {
    for (j, &(b, c, a)) in blocks.iter().enumerate() {
        let r = if j == 0 { first_r } else { -1 };
        out.push((bar(2 * b + 2), b + 1, Shift::Int(r)));
        out.extend(repeat_slot((plain(1), 0, Shift::Theta), c - 3));
        out.push((bar(2 * a + 2), a + 1, Shift::Int(1)));
    }
}

/// The family's pattern written out directly, without the attaching rules.
pub fn closed_pattern(family: &Family) -> Result<(i32, PatternTriple)> {
    family.validate()?;
    let i = Shift::Int;
    let mut v: Vec<Slot> = Vec::new();
    let delta = match family {
        Family::TwoOne { a, tail } => {
            for (j, &x) in a.iter().enumerate() {
                v.push((plain(2 * x + 1), x + 1, i(if j == 0 { 2 } else { 0 })));
            }
            if *tail > 0 {
                v.push((bar(2 * tail), *tail, i(-1)));
                -1
            } else {
                1
            }
        }
        Family::TwoC2 { blocks, tail } => {
            if blocks.is_empty() {
                v.push((bar(2 * tail), *tail, i(1)));
            } else {
                for (j, &(a, c)) in blocks.iter().enumerate() {
                    let head = if j == 0 { bar(2 * a + 2) } else { plain(2 * a + 3) };
                    v.push((head, a + 1, if j == 0 { i(1) } else { Shift::Theta }));
                    v.extend(repeat_slot((plain(1), 0, Shift::Theta), c - 3));
                }
                v.push((plain(2 * tail + 1), *tail, Shift::Theta));
            }
            -1
        }
        Family::TwoC21 { blocks } => {
            bca_slots(blocks, 1, &mut v);
            1
        }
        Family::TwoOneTwoC21 { a0, blocks } => {
            v.push((plain(2 * a0 + 1), a0 + 1, i(2)));
            bca_slots(blocks, -1, &mut v);
            1
        }
        Family::TwoC212 { blocks, tail } => {
            bca_slots(blocks, 1, &mut v);
            v.push((bar(2 * tail), *tail, i(-1)));
            -1
        }
        Family::TwoOneTwoC212 { a0, blocks, tail } => {
            v.push((plain(2 * a0 + 1), a0 + 1, i(2)));
            bca_slots(blocks, -1, &mut v);
            v.push((bar(2 * tail), *tail, i(-1)));
            -1
        }
        Family::TwosOnes { a, l } => {
            v = prefix(BlockToken::TwosOnes { a: *a, l: *l }).0;
            1
        }
        Family::COnes { c, l } => {
            v = prefix(BlockToken::COnes { c: *c, l: *l }).0;
            1
        }
    };
    Ok((delta, PatternTriple::from_slots(v)))
}

/// One term `sign · coefficient · ζ(index)` of a classical expansion.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassicalTerm {
    pub coefficient: u64,
    pub index: SignedString,
    pub sign: i32,
}

/// `ζ*(s) = δ Σ_p 2^{ℓ(p)} ζ(p)`, the `q → 1` shadow of [`compose`].
pub fn classical_expand(s: &Composition) -> Result<Vec<ClassicalTerm>> {
    if !s.is_zeta_admissible() {
        return Err(Error::NotZetaAdmissible(s.to_string()));
    }
    let (delta, pattern) = compose(s)?;
    Ok(expand_string(pattern.slots().s())
        .into_iter()
        .map(|p| ClassicalTerm {
            coefficient: 1u64 << p.depth(),
            index: p,
            sign: delta,
        })
        .collect())
}
