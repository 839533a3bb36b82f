//! Words with one marked letter, the two mark-crossing relations, and the
//! cumulative shift carried by a sequence of moves.
//!
//! The marked letter stands for a Chevalley generator (`F` or `E`), the
//! others for braid generators; operators compose right to left, acting on
//! the weight `λ` at the right end of the word.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::cartan::{CartanDatum, Weight};
use crate::error::{input, Error, Result};
use crate::laurent::LaurentInt;
use crate::qrep::{Chevalley, Convention};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MarkedWord {
    pub letters: Vec<usize>,
    pub mark: usize,
    pub flavor: Chevalley,
}

impl MarkedWord {
    pub fn new(letters: Vec<usize>, mark: usize, flavor: Chevalley) -> Result<Self> {
        if mark >= letters.len() {
            return input(format!("mark index {mark} out of bounds for word of length {}", letters.len()));
        }
        Ok(Self { letters, mark, flavor })
    }

    pub fn marked_letter(&self) -> usize {
        self.letters[self.mark]
    }

    pub fn is_reduced(&self, datum: &CartanDatum) -> bool {
        datum
            .word(&self.letters)
            .map(|w| datum.is_reduced(&w))
            .unwrap_or(false)
    }

    /// Parses `"1,2,_1"` style input (1-based, `_` marks the letter).
    pub fn parse(s: &str, flavor: Chevalley) -> Result<Self> {
        let mut s = s.trim();
        // accept the display form `(1,_2)F`
        if let Some(rest) = s.strip_prefix('(') {
            let (body, fl) = rest
                .rsplit_once(')')
                .ok_or_else(|| Error::Input(format!("unbalanced parenthesis in {s:?}")))?;
            let want = match flavor {
                Chevalley::E => "E",
                Chevalley::F => "F",
            };
            if !fl.is_empty() && fl != want {
                return input(format!("flavor {fl} does not match {want}"));
            }
            s = body;
        }
        let mut letters = Vec::new();
        let mut mark = None;
        for (p, t) in s.split(',').enumerate() {
            let t = t.trim();
            let (marked, body) = match t.strip_prefix('_') {
                Some(b) => (true, b),
                None => (false, t),
            };
            let i: usize = body
                .parse()
                .map_err(|_| Error::Input(format!("bad letter {t:?}")))?;
            if i == 0 {
                return input("letters are 1-based");
            }
            if marked {
                if mark.is_some() {
                    return input("more than one marked letter");
                }
                mark = Some(p);
            }
            letters.push(i - 1);
        }
        let mark = mark.ok_or_else(|| Error::Input("no marked letter".into()))?;
        Self::new(letters, mark, flavor)
    }
}

impl fmt::Display for MarkedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (p, i) in self.letters.iter().enumerate() {
            if p > 0 {
                write!(f, ",")?;
            }
            if p == self.mark {
                write!(f, "_{}", i + 1)?;
            } else {
                write!(f, "{}", i + 1)?;
            }
        }
        let fl = match self.flavor {
            Chevalley::E => "E",
            Chevalley::F => "F",
        };
        write!(f, "){fl}")
    }
}

impl fmt::Debug for MarkedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum MoveKind {
    PlainCommute,
    PlainBraid,
    MarkCommute,
    MarkBraid,
}

/// A move at `pos` (first affected position).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Move {
    pub kind: MoveKind,
    pub pos: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub kind: MoveKind,
    pub pos: usize,
    pub shift: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MoveTrace {
    pub source: MarkedWord,
    pub target: MarkedWord,
    pub steps: Vec<TraceStep>,
    pub total: i64,
}

impl MoveTrace {
    /// Tab-separated export: one line per move plus a totals line.
    pub fn to_tsv(&self) -> String {
        let mut s = String::from("kind\tpos\tshift\n");
        for st in &self.steps {
            s.push_str(&format!("{:?}\t{}\t{}\n", st.kind, st.pos + 1, st.shift));
        }
        s.push_str(&format!("total\t{}\t{}\n", self.steps.len(), self.total));
        s
    }
}

/// Shift contributed by the forward mark-braid `(ℓ, j, _ℓ) -> (_j, ℓ, j)`
/// acting on local weight `lam`, with `μ = s_ℓ s_j(λ') - α_j`.
pub fn f_mark_shift(datum: &CartanDatum, l: usize, j: usize, lam: &Weight) -> i64 {
    let mu = datum.act(&[l, j], lam).sub(&datum.alpha(j));
    if lam[j] >= 0 && mu[l] > 0 {
        -1
    } else if lam[j] < 0 && mu[l] <= 0 {
        1
    } else {
        0
    }
}

/// E-mark analogue of [`f_mark_shift`], with `ν = s_ℓ s_j(λ') + α_j`.
/// The table was read off exact evaluations of both sides (see
/// `qrep::derive_mark_table`), which the test suite re-derives.
pub fn e_mark_shift(datum: &CartanDatum, l: usize, j: usize, lam: &Weight) -> i64 {
    let nu = datum.act(&[l, j], lam).add(&datum.alpha(j));
    if lam[j] <= 0 && nu[l] < 0 {
        -1
    } else if lam[j] > 0 && nu[l] >= 0 {
        1
    } else {
        0
    }
}

fn mark_shift(datum: &CartanDatum, flavor: Chevalley, l: usize, j: usize, lam: &Weight) -> i64 {
    match flavor {
        Chevalley::F => f_mark_shift(datum, l, j, lam),
        Chevalley::E => e_mark_shift(datum, l, j, lam),
    }
}

/// Weight entering position `p` from the right: the letters after `p`
/// act on `λ`, the marked one by `∓α`.
pub fn local_weight(datum: &CartanDatum, mw: &MarkedWord, p: usize, lambda: &Weight) -> Weight {
    let mut w = lambda.clone();
    for q in (p..mw.letters.len()).rev() {
        let i = mw.letters[q];
        w = if q == mw.mark {
            match mw.flavor {
                Chevalley::F => w.sub(&datum.alpha(i)),
                Chevalley::E => w.add(&datum.alpha(i)),
            }
        } else {
            datum.simple_reflection(i, &w)
        };
    }
    w
}

/// Applies `mv` and returns the rewritten word with its shift `k_m`.
pub fn apply_move(
    datum: &CartanDatum,
    mw: &MarkedWord,
    mv: Move,
    lambda: &Weight,
) -> Result<(MarkedWord, i64)> {
    let w = &mw.letters;
    let p = mv.pos;
    let bad = || Error::Pattern(format!("{:?} does not apply to {mw} at {}", mv.kind, p + 1));
    let width = match mv.kind {
        MoveKind::PlainCommute | MoveKind::MarkCommute => 2,
        MoveKind::PlainBraid | MoveKind::MarkBraid => 3,
    };
    if p + width > w.len() {
        return Err(bad());
    }
    let touches_mark = (p..p + width).contains(&mw.mark);
    let mut out = mw.clone();
    match mv.kind {
        MoveKind::PlainCommute | MoveKind::MarkCommute => {
            let (a, b) = (w[p], w[p + 1]);
            if a == b || datum.a(a, b) != 0 || touches_mark != (mv.kind == MoveKind::MarkCommute) {
                return Err(bad());
            }
            out.letters.swap(p, p + 1);
            if touches_mark {
                out.mark = if mw.mark == p { p + 1 } else { p };
            }
            Ok((out, 0))
        }
        MoveKind::PlainBraid => {
            if touches_mark || w[p] != w[p + 2] || datum.a(w[p], w[p + 1]) != -1 {
                return Err(bad());
            }
            let (a, b) = (w[p], w[p + 1]);
            out.letters[p..p + 3].copy_from_slice(&[b, a, b]);
            Ok((out, 0))
        }
        MoveKind::MarkBraid => {
            if w[p] != w[p + 2] || datum.a(w[p], w[p + 1]) != -1 {
                return Err(bad());
            }
            let lam = local_weight(datum, mw, p + 3, lambda);
            let (a, b) = (w[p], w[p + 1]);
            out.letters[p..p + 3].copy_from_slice(&[b, a, b]);
            if mw.mark == p + 2 {
                // (ℓ, j, _ℓ) -> (_j, ℓ, j)
                out.mark = p;
                Ok((out, mark_shift(datum, mw.flavor, a, b, &lam)))
            } else if mw.mark == p {
                // (_j, ℓ, j) -> (ℓ, j, _ℓ): reverse of the forward move from the target
                out.mark = p + 2;
                Ok((out, -mark_shift(datum, mw.flavor, b, a, &lam)))
            } else {
                Err(bad())
            }
        }
    }
}

/// All legal moves at every position, in `(pos, kind)` order.
pub fn legal_moves(datum: &CartanDatum, mw: &MarkedWord) -> Vec<Move> {
    let mut out = Vec::new();
    let w = &mw.letters;
    for p in 0..w.len() {
        for kind in [
            MoveKind::PlainCommute,
            MoveKind::MarkCommute,
            MoveKind::PlainBraid,
            MoveKind::MarkBraid,
        ] {
            let width = if matches!(kind, MoveKind::PlainCommute | MoveKind::MarkCommute) { 2 } else { 3 };
            if p + width > w.len() {
                continue;
            }
            let touches = (p..p + width).contains(&mw.mark);
            let ok = match kind {
                MoveKind::PlainCommute | MoveKind::MarkCommute => {
                    w[p] != w[p + 1]
                        && datum.a(w[p], w[p + 1]) == 0
                        && touches == (kind == MoveKind::MarkCommute)
                }
                MoveKind::PlainBraid => !touches && w[p] == w[p + 2] && datum.a(w[p], w[p + 1]) == -1,
                MoveKind::MarkBraid => {
                    (mw.mark == p || mw.mark == p + 2)
                        && w[p] == w[p + 2]
                        && datum.a(w[p], w[p + 1]) == -1
                }
            };
            if ok {
                out.push(Move { kind, pos: p });
            }
        }
    }
    out
}

/// Breadth-first search for a move sequence from `a` to `b`; among
/// shortest traces the one found first in move order is returned.
pub fn connect(
    datum: &CartanDatum,
    a: &MarkedWord,
    b: &MarkedWord,
    lambda: &Weight,
) -> Result<MoveTrace> {
    if a.flavor != b.flavor {
        return input("marked words have different flavors");
    }
    let wa = datum.word(&a.letters)?;
    let wb = datum.word(&b.letters)?;
    if !datum.is_reduced(&wa) || !datum.is_reduced(&wb) {
        return input(format!("connect needs reduced marked words, got {a} and {b}"));
    }
    if !wa.same_element(&wb) {
        return input(format!("{a} and {b} have different underlying elements"));
    }
    let mut parent: HashMap<MarkedWord, Option<(MarkedWord, Move, i64)>> = HashMap::new();
    parent.insert(a.clone(), None);
    let mut queue = VecDeque::from([a.clone()]);
    while let Some(cur) = queue.pop_front() {
        if cur == *b {
            let mut steps = Vec::new();
            let mut node = cur;
            while let Some(Some((prev, mv, k))) = parent.get(&node) {
                steps.push(TraceStep { kind: mv.kind, pos: mv.pos, shift: *k });
                node = prev.clone();
            }
            steps.reverse();
            let total = steps.iter().map(|s| s.shift).sum();
            return Ok(MoveTrace {
                source: a.clone(),
                target: b.clone(),
                steps,
                total,
            });
        }
        for mv in legal_moves(datum, &cur) {
            let (next, k) = apply_move(datum, &cur, mv, lambda)?;
            if !parent.contains_key(&next) {
                parent.insert(next.clone(), Some((cur.clone(), mv, k)));
                queue.push_back(next);
            }
        }
    }
    Err(Error::NotConnected(format!("{a} -> {b}")))
}

/// Re-applies a trace to its source, checking shifts along the way.
pub fn replay(datum: &CartanDatum, trace: &MoveTrace, lambda: &Weight) -> Result<MarkedWord> {
    let mut cur = trace.source.clone();
    for st in &trace.steps {
        let (next, k) = apply_move(datum, &cur, Move { kind: st.kind, pos: st.pos }, lambda)?;
        if k != st.shift {
            return Err(Error::Invariant(format!("shift mismatch replaying {:?}", st)));
        }
        cur = next;
    }
    if cur != trace.target {
        return Err(Error::Invariant(format!("replay ends at {cur}, expected {}", trace.target)));
    }
    Ok(cur)
}

/// `(-1)^k` and the power of `q` by which `φ(source)` differs from
/// `φ(target)`, in the given convention.
pub fn predicted_ratio(trace: &MoveTrace, conv: Convention) -> (i64, LaurentInt) {
    let k = trace.total;
    let sign = if k % 2 == 0 { 1 } else { -1 };
    (sign, conv.q(k))
}

pub fn predicted_scalar(trace: &MoveTrace, conv: Convention) -> LaurentInt {
    let (s, q) = predicted_ratio(trace, conv);
    q.scale(&s.into())
}

/// Checks that the shift is a potential on the move graph reachable from
/// `a`, so every trace between two words carries the same total. Returns
/// the number of words reached and any conflicting edge.
pub fn path_independence(
    datum: &CartanDatum,
    a: &MarkedWord,
    lambda: &Weight,
) -> Result<(usize, Option<String>)> {
    let mut pot: BTreeMap<MarkedWord, i64> = BTreeMap::new();
    pot.insert(a.clone(), 0);
    let mut queue = VecDeque::from([a.clone()]);
    while let Some(cur) = queue.pop_front() {
        let pc = pot[&cur];
        for mv in legal_moves(datum, &cur) {
            let (next, k) = apply_move(datum, &cur, mv, lambda)?;
            match pot.get(&next) {
                Some(&pn) => {
                    if pn != pc + k {
                        return Ok((
                            pot.len(),
                            Some(format!("{cur} -{:?}@{}-> {next}: {} vs {}", mv.kind, mv.pos + 1, pc + k, pn)),
                        ));
                    }
                }
                None => {
                    pot.insert(next.clone(), pc + k);
                    queue.push_back(next);
                }
            }
        }
    }
    Ok((pot.len(), None))
}

/// All marked words reachable from `a` by moves.
pub fn orbit(datum: &CartanDatum, a: &MarkedWord) -> Vec<MarkedWord> {
    let mut seen: BTreeMap<MarkedWord, ()> = BTreeMap::new();
    seen.insert(a.clone(), ());
    let mut queue = VecDeque::from([a.clone()]);
    while let Some(cur) = queue.pop_front() {
        for mv in legal_moves(datum, &cur) {
            if let Ok((next, _)) = apply_move(datum, &cur, mv, &Weight::zero(datum.rank())) {
                if seen.insert(next.clone(), ()).is_none() {
                    queue.push_back(next);
                }
            }
        }
    }
    seen.into_keys().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{build_cartan, CartanType};

    #[test]
    fn mark_commute_a3() {
        let d = build_cartan(CartanType::A, 3).unwrap();
        let a = MarkedWord::parse("1,_3", Chevalley::F).unwrap();
        let (b, k) = apply_move(&d, &a, Move { kind: MoveKind::MarkCommute, pos: 0 }, &Weight::zero(3)).unwrap();
        assert_eq!(b, MarkedWord::parse("_3,1", Chevalley::F).unwrap());
        assert_eq!(k, 0);
    }

    #[test]
    fn mark_braid_a2() {
        let d = build_cartan(CartanType::A, 2).unwrap();
        let a = MarkedWord::parse("1,2,_1", Chevalley::F).unwrap();
        let b = MarkedWord::parse("_2,1,2", Chevalley::F).unwrap();
        let t = connect(&d, &a, &b, &Weight(vec![1, 0])).unwrap();
        assert_eq!(t.steps.len(), 1);
        assert_eq!(t.steps[0].kind, MoveKind::MarkBraid);
        assert!(connect(&d, &a, &a, &Weight(vec![1, 0])).unwrap().steps.is_empty());
    }

    #[test]
    fn pattern_mismatch_rejected() {
        let d = build_cartan(CartanType::A, 2).unwrap();
        let a = MarkedWord::parse("1,_2", Chevalley::F).unwrap();
        let r = apply_move(&d, &a, Move { kind: MoveKind::MarkCommute, pos: 0 }, &Weight::zero(2));
        assert!(matches!(r, Err(Error::Pattern(_))));
    }
}
