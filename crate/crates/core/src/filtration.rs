//! Free-cell filtrations of pushouts that attach new arrows.
//!
//! Attaching free arrows `L ∖ K` to a monoid or category (with `K` glued to
//! existing morphisms) adds, at stage `i`, exactly the words with `i` new
//! letters. Stage carriers are built one pushout square at a time from the
//! `i`-fold corner of `K ⊆ L`, and are compared with brute-force rewriting
//! oracles that never look at the stage construction.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::category::{cosieve_generated, find_isomorphism, CatFunctor, FinCategory, FinPoset, Morphism};
use crate::dwyer::pushout_product_cat;
use crate::simplicial::{standard, subdivide, StandardKind};
use crate::{Error, Result};

/// A finite set `L` with a subset `K`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetInclusion {
    labels: Vec<String>,
    k: Vec<usize>,
}

impl SetInclusion {
    pub fn new(labels: Vec<String>, k: &[usize]) -> Result<Self> {
        let mut k = k.to_vec();
        k.sort_unstable();
        k.dedup();
        if k.last().is_some_and(|&x| x >= labels.len()) {
            return Err(Error::InvalidInput("K is not contained in L".into()));
        }
        Ok(Self { labels, k })
    }

    pub fn from_sizes(l: usize, k: &[usize]) -> Result<Self> {
        Self::new((0..l).map(|x| format!("l{x}")).collect(), k)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn l_size(&self) -> usize {
        self.labels.len()
    }

    /// The elements of `K`, sorted.
    pub fn k(&self) -> &[usize] {
        &self.k
    }

    /// Position of `l` in [`Self::k`], if it lies in `K`.
    pub fn k_position(&self, l: usize) -> Option<usize> {
        self.k.binary_search(&l).ok()
    }

    /// `L ∖ K`, sorted.
    pub fn complement(&self) -> Vec<usize> {
        (0..self.l_size()).filter(|&l| self.k_position(l).is_none()).collect()
    }
}

/// The `i`-fold pushout product of `K ⊆ L` realized inside `Lⁱ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetCorner {
    pub power: usize,
    pub l_size: usize,
    /// Sorted tuples of the domain.
    pub domain: Vec<Vec<usize>>,
}

impl SetCorner {
    pub fn contains(&self, tuple: &[usize]) -> bool {
        self.domain.binary_search_by(|t| t.as_slice().cmp(tuple)).is_ok()
    }
}

/// Builds `f^□i` by iterating the corner construction: the domain at `i` is
/// the pushout of `D × L ← D × K → L^{i-1} × K`, which is realized as a
/// union inside `Lⁱ` after checking that the two pieces meet in `D × K`.
pub fn pushout_product_iter(f: &SetInclusion, i: usize) -> Result<SetCorner> {
    if i == 0 {
        return Err(Error::InvalidInput("pushout product power must be at least 1".into()));
    }
    let l = f.l_size();
    let mut domain: BTreeSet<Vec<usize>> = f.k().iter().map(|&k| vec![k]).collect();
    let mut full: Vec<Vec<usize>> = (0..l).map(|x| vec![x]).collect();
    for _ in 1..i {
        let mut left: BTreeSet<Vec<usize>> = BTreeSet::new();
        for d in &domain {
            for x in 0..l {
                left.insert(extend(d, x));
            }
        }
        let mut right: BTreeSet<Vec<usize>> = BTreeSet::new();
        for t in &full {
            for &k in f.k() {
                right.insert(extend(t, k));
            }
        }
        let glued = domain.len() * f.k().len();
        let next: BTreeSet<Vec<usize>> = left.union(&right).cloned().collect();
        if next.len() + glued != left.len() + right.len() {
            return Err(Error::InvalidInput("corner pieces overlap outside the glued part".into()));
        }
        domain = next;
        full = full.iter().flat_map(|t| (0..l).map(move |x| extend(t, x))).collect();
    }
    Ok(SetCorner { power: i, l_size: l, domain: domain.into_iter().collect() })
}

fn extend(t: &[usize], x: usize) -> Vec<usize> {
    let mut out = t.to_vec();
    out.push(x);
    out
}

/// Whether the iterated corner equals `Lⁱ ∖ (L ∖ K)ⁱ`.
pub fn corner_formula_check(f: &SetInclusion, i: usize) -> Result<bool> {
    let corner = pushout_product_iter(f, i)?;
    let formula: Vec<Vec<usize>> =
        tuples(f.l_size(), i).into_iter().filter(|t| t.iter().any(|&x| f.k_position(x).is_some())).collect();
    Ok(corner.domain == formula)
}

/// All of `{0..l}ⁱ` in lexicographic order.
fn tuples(l: usize, i: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..i {
        out = out.iter().flat_map(|t| (0..l).map(move |x| extend(t, x))).collect();
    }
    out
}

/// `f^□i` for a functor, as a map into the `i`-fold product of its target.
pub fn pushout_product_power(f: &CatFunctor, i: usize, max_path_len: usize) -> Result<CatFunctor> {
    if i == 0 {
        return Err(Error::InvalidInput("pushout product power must be at least 1".into()));
    }
    let mut power = f.clone();
    for _ in 1..i {
        power = pushout_product_cat(&power, f, max_path_len)?.map;
    }
    Ok(power)
}

/// `T₀,₁(A)`: objects `0`, `1` and one morphism `0 -> 1` per element of `A`.
pub fn t01(elements: &[String]) -> FinCategory {
    let mut morphisms =
        vec![Morphism { src: 0, dst: 0, label: "id(0)".into() }, Morphism { src: 1, dst: 1, label: "id(1)".into() }];
    morphisms.extend(elements.iter().map(|e| Morphism { src: 0, dst: 1, label: e.clone() }));
    FinCategory::new(vec!["0".into(), "1".into()], morphisms, vec![0, 1], |f, g| if f <= 1 { g } else { f })
        .expect("T01 satisfies the category laws")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMonoid {
    labels: Vec<String>,
    unit: usize,
    table: Vec<Vec<usize>>,
}

impl FiniteMonoid {
    /// Checks closure, unitality and associativity exhaustively.
    pub fn new(labels: Vec<String>, unit: usize, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = labels.len();
        let bad = |msg: String| Err(Error::InvalidMonoid(msg));
        if unit >= n || table.len() != n || table.iter().any(|row| row.len() != n || row.iter().any(|&c| c >= n)) {
            return bad("multiplication table does not match the elements".into());
        }
        for a in 0..n {
            if table[unit][a] != a || table[a][unit] != a {
                return bad(format!("{} is not a unit for {}", labels[unit], labels[a]));
            }
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return bad(format!("({}, {}, {}) is not associative", labels[a], labels[b], labels[c]));
                    }
                }
            }
        }
        Ok(Self { labels, unit, table })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `Z/n` written additively, elements `0..n`.
    pub fn cyclic(n: usize) -> Self {
        let labels = (0..n).map(|a| format!("{a}")).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self { labels, unit: 0, table }
    }

    /// `{1, e}` with `e e = e`.
    pub fn idempotent() -> Self {
        Self { labels: vec!["1".into(), "e".into()], unit: 0, table: vec![vec![0, 1], vec![1, 1]] }
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    /// The one-object category with morphism `a` for element `a`.
    pub fn to_category(&self) -> FinCategory {
        let morphisms = self.labels.iter().map(|l| Morphism { src: 0, dst: 0, label: l.clone() }).collect();
        FinCategory::new(vec!["*".into()], morphisms, vec![self.unit], |a, b| self.table[a][b])
            .expect("a monoid is a one-object category")
    }
}

/// The pushout of `X ← F(K) → F(L)` in monoids, with `K` sent into `X` by
/// `attach` (indexed like [`SetInclusion::k`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidPushoutProblem {
    pub monoid: FiniteMonoid,
    pub inclusion: SetInclusion,
    pub attach: Vec<usize>,
}

impl MonoidPushoutProblem {
    pub fn new(monoid: FiniteMonoid, inclusion: SetInclusion, attach: Vec<usize>) -> Result<Self> {
        if attach.len() != inclusion.k().len() || attach.iter().any(|&x| x >= monoid.size()) {
            return Err(Error::InvalidInput("attach must send every element of K into the monoid".into()));
        }
        Ok(Self { monoid, inclusion, attach })
    }
}

/// A letter of the amalgamated alphabet: a morphism of `X` or an element of `L`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    X(usize),
    L(usize),
}

/// Canonical words: no `K`-letters, no identities, no two adjacent `X`-letters.
pub type CanonicalWord = Vec<Letter>;

/// Greedy left-to-right normal form for words over `U(X) ⊔ L`.
fn monoid_normal_form(prob: &MonoidPushoutProblem, word: &[Letter]) -> CanonicalWord {
    let m = &prob.monoid;
    let mut out: CanonicalWord = Vec::with_capacity(word.len());
    for &letter in word {
        let letter = match letter {
            Letter::L(l) => match prob.inclusion.k_position(l) {
                Some(p) => Letter::X(prob.attach[p]),
                None => letter,
            },
            x => x,
        };
        match letter {
            Letter::X(e) if e == m.unit() => {}
            Letter::X(e) => match out.last_mut() {
                Some(Letter::X(top)) => {
                    *top = m.mul(*top, e);
                    if *top == m.unit() {
                        out.pop();
                    }
                }
                _ => out.push(letter),
            },
            l => out.push(l),
        }
    }
    out
}

/// One-step rewrites: multiply two adjacent `X`-letters, replace a
/// `K`-letter by its image, or delete the unit.
fn monoid_rewrites(prob: &MonoidPushoutProblem, word: &[Letter]) -> Vec<Vec<Letter>> {
    let m = &prob.monoid;
    let mut out = Vec::new();
    for (p, &letter) in word.iter().enumerate() {
        match letter {
            Letter::X(e) if e == m.unit() => {
                let mut w = word.to_vec();
                w.remove(p);
                out.push(w);
            }
            Letter::L(l) => {
                if let Some(q) = prob.inclusion.k_position(l) {
                    let mut w = word.to_vec();
                    w[p] = Letter::X(prob.attach[q]);
                    out.push(w);
                }
            }
            Letter::X(_) => {}
        }
        if let (Letter::X(a), Some(&Letter::X(b))) = (letter, word.get(p + 1)) {
            let mut w = word.to_vec();
            w[p] = Letter::X(m.mul(a, b));
            w.remove(p + 1);
            out.push(w);
        }
    }
    out
}

fn words(alphabet: &[Letter], max_len: usize) -> Vec<Vec<Letter>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<Letter>| {
                alphabet.iter().map(move |&a| {
                    let mut v = w.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn monoid_alphabet(prob: &MonoidPushoutProblem) -> Vec<Letter> {
    (0..prob.monoid.size()).map(Letter::X).chain((0..prob.inclusion.l_size()).map(Letter::L)).collect()
}

/// Checks that every one-step rewrite of every word of length at most 3
/// (which covers all overlaps of the length-2 rules) has the same greedy
/// normal form as the word itself. With termination this makes the greedy
/// normal form the unique one.
pub fn check_local_confluence(prob: &MonoidPushoutProblem) -> Result<()> {
    for word in words(&monoid_alphabet(prob), 3) {
        let expected = monoid_normal_form(prob, &word);
        for rewritten in monoid_rewrites(prob, &word) {
            if monoid_normal_form(prob, &rewritten) != expected {
                return Err(Error::InvalidInput(format!("rewriting is not confluent at {word:?}")));
            }
        }
    }
    Ok(())
}

/// All canonical forms with at most `max_letters` letters from `L ∖ K`,
/// found by normalizing every word of length at most `2 max_letters + 1`.
pub fn monoid_pushout_oracle(prob: &MonoidPushoutProblem, max_letters: usize) -> Result<BTreeSet<CanonicalWord>> {
    check_local_confluence(prob)?;
    Ok(words(&monoid_alphabet(prob), 2 * max_letters + 1)
        .iter()
        .map(|w| monoid_normal_form(prob, w))
        .filter(|w| letter_count(w) <= max_letters)
        .collect())
}

fn letter_count(w: &[Letter]) -> usize {
    w.iter().filter(|l| matches!(l, Letter::L(_))).count()
}

/// `f_0 l_1 f_1 ⋯ l_j f_j`: morphisms of `X` separated by letters of `L`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellWord {
    pub morphisms: Vec<usize>,
    pub letters: Vec<usize>,
}

impl CellWord {
    fn canonical(&self, x: &FinCategory) -> CanonicalWord {
        let mut out = Vec::new();
        for (t, &f) in self.morphisms.iter().enumerate() {
            if !x.is_identity(f) {
                out.push(Letter::X(f));
            }
            if let Some(&l) = self.letters.get(t) {
                out.push(Letter::L(l));
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationStage {
    pub index: usize,
    /// The previous carrier followed by the new cells.
    pub carrier: Vec<CellWord>,
    /// Previous carrier into this one.
    pub inclusion: Vec<usize>,
    /// Indices of the cells attached at this stage.
    pub new_cells: Vec<usize>,
    /// Each corner cell with its image in the previous carrier.
    pub attaching: Vec<(CellWord, usize)>,
}

/// The hom-set `P(x, y)` of `X ⊔_{T(K)} T(L)` where `T(K) -> X` sends
/// `0 ↦ a`, `1 ↦ b` and `K` into `X(a, b)`.
#[derive(Clone, Debug)]
pub struct HomFiltrationProblem {
    pub category: Arc<FinCategory>,
    pub a: usize,
    pub b: usize,
    pub x: usize,
    pub y: usize,
    pub inclusion: SetInclusion,
    /// Morphisms of `X(a, b)`, indexed like [`SetInclusion::k`].
    pub attach: Vec<usize>,
}

impl HomFiltrationProblem {
    pub fn new(
        category: Arc<FinCategory>,
        (a, b): (usize, usize),
        (x, y): (usize, usize),
        inclusion: SetInclusion,
        attach: Vec<usize>,
    ) -> Result<Self> {
        let n = category.object_count();
        if [a, b, x, y].iter().any(|&o| o >= n) {
            return Err(Error::InvalidInput("object out of range".into()));
        }
        if attach.len() != inclusion.k().len() || attach.iter().any(|&f| !category.hom(a, b).contains(&f)) {
            return Err(Error::InvalidInput("attach must send every element of K into X(a, b)".into()));
        }
        Ok(Self { category, a, b, x, y, inclusion, attach })
    }

    pub fn from_monoid(prob: &MonoidPushoutProblem) -> Self {
        let category = Arc::new(prob.monoid.to_category());
        Self { category, a: 0, b: 0, x: 0, y: 0, inclusion: prob.inclusion.clone(), attach: prob.attach.clone() }
    }

    /// Hom-sets `X(x, a), X(b, a), …, X(b, y)` framing the letters of a cell with `i` letters.
    fn slots(&self, i: usize) -> Vec<&[usize]> {
        let c = &self.category;
        if i == 0 {
            return vec![c.hom(self.x, self.y)];
        }
        let mut slots = vec![c.hom(self.x, self.a)];
        slots.extend((1..i).map(|_| c.hom(self.b, self.a)));
        slots.push(c.hom(self.b, self.y));
        slots
    }

    fn cells(&self, letters: &[Vec<usize>]) -> Vec<CellWord> {
        let mut out = Vec::new();
        for ls in letters {
            let mut frames: Vec<Vec<usize>> = vec![Vec::new()];
            for slot in self.slots(ls.len()) {
                frames = frames.iter().flat_map(|fr| slot.iter().map(move |&f| extend(fr, f))).collect();
            }
            out.extend(frames.into_iter().map(|morphisms| CellWord { morphisms, letters: ls.clone() }));
        }
        out
    }

    /// Replaces the `K`-letter at position `t` by its image in `X`.
    fn absorb(&self, cell: &CellWord, t: usize) -> CellWord {
        let c = &self.category;
        let k = self.inclusion.k_position(cell.letters[t]).expect("absorbing a letter of K");
        let merged = c.then(c.then(cell.morphisms[t], self.attach[k]), cell.morphisms[t + 1]);
        let mut morphisms = cell.morphisms[..t].to_vec();
        morphisms.push(merged);
        morphisms.extend_from_slice(&cell.morphisms[t + 2..]);
        let mut letters = cell.letters.clone();
        letters.remove(t);
        CellWord { morphisms, letters }
    }

    fn first_k(&self, cell: &CellWord) -> Option<usize> {
        cell.letters.iter().position(|&l| self.inclusion.k_position(l).is_some())
    }

    fn last_k(&self, cell: &CellWord) -> Option<usize> {
        cell.letters.iter().rposition(|&l| self.inclusion.k_position(l).is_some())
    }
}

/// Builds stages `0..=max_stage`. Stage `i` attaches the cells on
/// `(L ∖ K)ⁱ` along the corner `f^□i`, each corner cell being sent to the
/// previous stage by absorbing its first `K`-letter and, inductively, the
/// attaching map one stage down.
pub fn hom_filtration(prob: &HomFiltrationProblem, max_stage: usize) -> Result<Vec<FiltrationStage>> {
    let carrier = prob.cells(&[Vec::new()]);
    let new_cells = (0..carrier.len()).collect();
    let mut stages =
        vec![FiltrationStage { index: 0, carrier, inclusion: Vec::new(), new_cells, attaching: Vec::new() }];
    for i in 1..=max_stage {
        let previous = stages.last().expect("stage 0 exists");
        let index: BTreeMap<&CellWord, usize> = previous.carrier.iter().enumerate().map(|(k, w)| (w, k)).collect();
        let corner = pushout_product_iter(&prob.inclusion, i)?;
        let (attached, fresh): (Vec<Vec<usize>>, Vec<Vec<usize>>) =
            tuples(prob.inclusion.l_size(), i).into_iter().partition(|t| corner.contains(t));
        let mut attaching = Vec::new();
        for cell in prob.cells(&attached) {
            let mut image = cell.clone();
            while let Some(t) = prob.first_k(&image) {
                image = prob.absorb(&image, t);
            }
            let target = *index
                .get(&image)
                .ok_or_else(|| Error::InvalidInput(format!("corner cell {cell:?} does not land in stage {}", i - 1)))?;
            attaching.push((cell, target));
        }
        let mut carrier = previous.carrier.clone();
        let inclusion = (0..carrier.len()).collect();
        let start = carrier.len();
        carrier.extend(prob.cells(&fresh));
        let new_cells = (start..carrier.len()).collect();
        stages.push(FiltrationStage { index: i, carrier, inclusion, new_cells, attaching });
    }
    Ok(stages)
}

pub fn monoid_pushout_filtration(prob: &MonoidPushoutProblem, max_stage: usize) -> Result<Vec<FiltrationStage>> {
    hom_filtration(&HomFiltrationProblem::from_monoid(prob), max_stage)
}

/// Canonical forms of typed words from `x` to `y` with at most `max_letters`
/// letters of `L ∖ K`, grouped by that number. Words use every non-identity
/// morphism of `X` and every element of `L` as letters and have length at
/// most `2 max_letters + 1`.
pub fn hom_path_oracle(prob: &HomFiltrationProblem, max_letters: usize) -> Vec<BTreeSet<CanonicalWord>> {
    let c = &prob.category;
    let mut strata = vec![BTreeSet::new(); max_letters + 1];
    // (current object, word)
    let mut layer: Vec<(usize, Vec<Letter>)> = vec![(prob.x, Vec::new())];
    for len in 0..=2 * max_letters + 1 {
        for (object, word) in &layer {
            if *object == prob.y {
                let canonical = hom_normal_form(prob, word);
                let j = letter_count(&canonical);
                if j <= max_letters {
                    strata[j].insert(canonical);
                }
            }
        }
        if len == 2 * max_letters + 1 {
            break;
        }
        let mut next = Vec::new();
        for (object, word) in &layer {
            for f in c.out_of(*object).filter(|&f| !c.is_identity(f)) {
                next.push((c.morphism(f).dst, extend_letter(word, Letter::X(f))));
            }
            if *object == prob.a {
                for l in 0..prob.inclusion.l_size() {
                    next.push((prob.b, extend_letter(word, Letter::L(l))));
                }
            }
        }
        layer = next;
    }
    strata
}

fn extend_letter(word: &[Letter], letter: Letter) -> Vec<Letter> {
    let mut out = word.to_vec();
    out.push(letter);
    out
}

fn hom_normal_form(prob: &HomFiltrationProblem, word: &[Letter]) -> CanonicalWord {
    let c = &prob.category;
    let mut out: CanonicalWord = Vec::new();
    for &letter in word {
        let letter = match letter {
            Letter::L(l) => prob.inclusion.k_position(l).map_or(letter, |p| Letter::X(prob.attach[p])),
            x => x,
        };
        match (letter, out.last_mut()) {
            (Letter::X(f), _) if c.is_identity(f) => {}
            (Letter::X(f), Some(Letter::X(top))) => {
                *top = c.then(*top, f);
                if c.is_identity(*top) {
                    out.pop();
                }
            }
            (l, _) => out.push(l),
        }
    }
    out
}

/// Stage-by-stage comparison of a filtration with its oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationReport {
    pub stage_sizes: Vec<usize>,
    pub oracle_sizes: Vec<usize>,
    /// Each stage maps bijectively onto the oracle's words with at most that many letters.
    pub bijective: bool,
    /// Inclusions agree with the oracle's inclusions.
    pub inclusions_commute: bool,
    /// Every attaching square commutes.
    pub squares_commute: bool,
    /// New cells at stage `i` are exactly `(L ∖ K)ⁱ` times the framing hom-sets.
    pub new_cells_exact: bool,
    pub first_mismatch: Option<String>,
}

impl FiltrationReport {
    pub fn passed(&self) -> bool {
        self.bijective && self.inclusions_commute && self.squares_commute && self.new_cells_exact
    }
}

fn compare(
    prob: &HomFiltrationProblem,
    stages: &[FiltrationStage],
    oracle: &[BTreeSet<CanonicalWord>],
) -> FiltrationReport {
    let c = &prob.category;
    let mut report = FiltrationReport {
        stage_sizes: stages.iter().map(|s| s.carrier.len()).collect(),
        oracle_sizes: Vec::new(),
        bijective: true,
        inclusions_commute: true,
        squares_commute: true,
        new_cells_exact: true,
        first_mismatch: None,
    };
    let note = |report: &mut FiltrationReport, msg: String| {
        if report.first_mismatch.is_none() {
            report.first_mismatch = Some(msg);
        }
    };
    let mut cumulative: BTreeSet<CanonicalWord> = BTreeSet::new();
    let complement = prob.inclusion.complement().len();
    for stage in stages {
        let i = stage.index;
        cumulative.extend(oracle[i].iter().cloned());
        report.oracle_sizes.push(cumulative.len());
        let images: Vec<CanonicalWord> = stage.carrier.iter().map(|w| w.canonical(c)).collect();
        let distinct: BTreeSet<&CanonicalWord> = images.iter().collect();
        if distinct.len() != images.len()
            || images.iter().any(|w| !cumulative.contains(w))
            || images.len() != cumulative.len()
        {
            report.bijective = false;
            let witness = images.iter().find(|w| !cumulative.contains(*w));
            note(&mut report, format!("stage {i}: carrier does not match the oracle (witness {witness:?})"));
        }
        if i > 0 {
            let previous = &stages[i - 1];
            let inclusion_ok = stage.inclusion.len() == previous.carrier.len()
                && stage.inclusion.iter().enumerate().all(|(k, &t)| stage.carrier[t] == previous.carrier[k]);
            if !inclusion_ok {
                report.inclusions_commute = false;
                note(&mut report, format!("stage {i}: inclusion does not preserve words"));
            }
            for (cell, target) in &stage.attaching {
                let mut image = cell.clone();
                while let Some(t) = prob.last_k(&image) {
                    image = prob.absorb(&image, t);
                }
                if previous.carrier[*target] != image {
                    report.squares_commute = false;
                    note(&mut report, format!("stage {i}: attaching square fails at {cell:?}"));
                }
            }
        }
        let slots: usize = prob.slots(i).iter().map(|s| s.len()).product();
        let expected = complement.pow(i as u32) * slots;
        let exact = stage.new_cells.len() == expected
            && stage.new_cells.iter().all(|&k| {
                let w = &stage.carrier[k];
                w.letters.len() == i && w.letters.iter().all(|&l| prob.inclusion.k_position(l).is_none())
            });
        if !exact {
            report.new_cells_exact = false;
            note(&mut report, format!("stage {i}: {} new cells, expected {expected}", stage.new_cells.len()));
        }
    }
    report
}

/// The monoid filtration checked against the string-rewriting oracle.
pub fn monoid_filtration_report(prob: &MonoidPushoutProblem, max_stage: usize) -> Result<FiltrationReport> {
    let hom = HomFiltrationProblem::from_monoid(prob);
    let stages = hom_filtration(&hom, max_stage)?;
    let oracle = monoid_pushout_oracle(prob, max_stage)?;
    let mut strata = vec![BTreeSet::new(); max_stage + 1];
    for w in oracle {
        // the oracle's X-letters are elements, which are the morphisms of the one-object category
        strata[letter_count(&w)].insert(w);
    }
    Ok(compare(&hom, &stages, &strata))
}

/// The hom-set filtration checked against typed path enumeration.
pub fn muro_hom_filtration(
    prob: &HomFiltrationProblem,
    max_stage: usize,
) -> Result<(Vec<FiltrationStage>, FiltrationReport)> {
    let stages = hom_filtration(prob, max_stage)?;
    let oracle = hom_path_oracle(prob, max_stage);
    let report = compare(prob, &stages, &oracle);
    Ok((stages, report))
}

/// Associativity and unitality of concatenation on the monoid stages, for
/// all triples whose product stays within the last stage.
pub fn check_stage_multiplication(prob: &MonoidPushoutProblem, stage: &FiltrationStage) -> bool {
    let m = &prob.monoid;
    let mul = |u: &CellWord, v: &CellWord| {
        let mut morphisms = u.morphisms[..u.morphisms.len() - 1].to_vec();
        morphisms.push(m.mul(*u.morphisms.last().unwrap(), v.morphisms[0]));
        morphisms.extend_from_slice(&v.morphisms[1..]);
        let mut letters = u.letters.clone();
        letters.extend_from_slice(&v.letters);
        CellWord { morphisms, letters }
    };
    let unit = CellWord { morphisms: vec![m.unit()], letters: Vec::new() };
    let words = &stage.carrier;
    let contains: BTreeSet<&CellWord> = words.iter().collect();
    for u in words {
        if mul(&unit, u) != *u || mul(u, &unit) != *u {
            return false;
        }
        for v in words.iter().filter(|v| u.letters.len() + v.letters.len() <= stage.index) {
            let uv = mul(u, v);
            if !contains.contains(&uv) {
                return false;
            }
            for w in words.iter().filter(|w| uv.letters.len() + w.letters.len() <= stage.index) {
                if mul(&uv, w) != mul(u, &mul(v, w)) {
                    return false;
                }
            }
        }
    }
    true
}

/// Largest dimension accepted by [`w_factorization`].
pub const W_FACTORIZATION_MAX_DIM: usize = 3;

/// The factorization `A -> W -> B` of the face poset of `Sd ∂Δⁿ` into the
/// face poset `B` of `Sd Δⁿ`, with `W` the cosieve generated by `A` and `V`
/// the complement of `A`. Member lists are sorted indices into `b`.
#[derive(Clone, Debug)]
pub struct WFactorization {
    pub b: FinPoset,
    pub a: Vec<usize>,
    pub w: Vec<usize>,
    pub v: Vec<usize>,
    /// The vertex of `Sd Δⁿ` at the top simplex.
    pub barycenter: usize,
    /// For each member of `w`, its image `(a, side)` in `A × {0 -> 1}`, with `a` an index into `self.a`.
    pub certificate: Vec<(usize, usize)>,
    pub checks: WChecks,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WChecks {
    /// `A -> W` is `A × {0} -> A × {0 -> 1}`.
    pub cylinder: bool,
    /// The constrained isomorphism search agrees, when `W` is small enough to run it.
    pub cylinder_search: Option<bool>,
    /// `V ∖ W` is the barycenter alone, initial in `V`.
    pub barycenter_initial: bool,
    /// `W ∩ V -> W, V -> B` is a pushout of posets along cosieves.
    pub pushout: bool,
    /// `W ∩ V -> W` is `A × {1} -> A × {0 -> 1}`.
    pub top_face: bool,
}

impl WChecks {
    pub fn all_pass(&self) -> bool {
        self.cylinder && self.cylinder_search != Some(false) && self.barycenter_initial && self.pushout && self.top_face
    }
}

/// Object cap for the isomorphism cross-check in [`w_factorization`].
pub const W_SEARCH_CAP: usize = 32;

pub fn w_factorization(n: usize) -> Result<WFactorization> {
    if n > W_FACTORIZATION_MAX_DIM {
        return Err(Error::CapExceeded { requested: n, cap: W_FACTORIZATION_MAX_DIM });
    }
    let simplex = standard(StandardKind::Simplex(n))?;
    let sub = subdivide(&simplex)?;
    let space = &sub.space;
    let barycenter = sub.vertex_cells.iter().position(|&(d, _)| d == n).expect("the top simplex is a vertex of Sd");
    // every nondegenerate simplex of Sd Δⁿ as its sorted vertex set
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for d in 0..=space.top_dim() {
        for c in 0..space.cell_count(d) {
            cells.push(space.vertices(d, c));
        }
    }
    let subset = |s: &[usize], t: &[usize]| s.iter().all(|v| t.contains(v));
    let leq = cells.iter().map(|s| cells.iter().map(|t| subset(s, t)).collect()).collect();
    let names = cells.iter().map(|s| s.iter().map(|&v| space.label(0, v)).collect::<Vec<_>>().join("<")).collect();
    let b = FinPoset::new(names, leq)?;
    let a: Vec<usize> = (0..cells.len()).filter(|&s| !cells[s].contains(&barycenter)).collect();
    let b_cat = b.to_category();
    let w = cosieve_generated(&b_cat, &a);
    let v: Vec<usize> = (0..cells.len()).filter(|s| a.binary_search(s).is_err()).collect();

    // w ∉ A contains the barycenter and drops to a simplex of A without it
    let mut certificate = Vec::with_capacity(w.len());
    let mut cylinder = true;
    for &s in &w {
        if let Ok(k) = a.binary_search(&s) {
            certificate.push((k, 0));
        } else {
            let face: Vec<usize> = cells[s].iter().copied().filter(|&x| x != barycenter).collect();
            match a.iter().position(|&t| cells[t] == face) {
                Some(k) => certificate.push((k, 1)),
                None => {
                    cylinder = false;
                    certificate.push((usize::MAX, 1));
                }
            }
        }
    }
    let cylinder_le = |(p, i): (usize, usize), (q, j): (usize, usize)| b.le(a[p], a[q]) && i <= j;
    let mut hit = BTreeSet::new();
    cylinder = cylinder
        && certificate.iter().all(|&c| hit.insert(c))
        && hit.len() == 2 * a.len()
        && (0..w.len()).all(|s| (0..w.len()).all(|t| b.le(w[s], w[t]) == cylinder_le(certificate[s], certificate[t])));
    let top_face =
        cylinder && w.iter().zip(&certificate).all(|(s, &(_, side))| (side == 1) == v.binary_search(s).is_ok());

    let cylinder_search = if w.len() <= W_SEARCH_CAP { Some(cylinder_search(&b, &a, &w)?) } else { None };

    let outside: Vec<usize> = v.iter().copied().filter(|s| w.binary_search(s).is_err()).collect();
    let barycenter_cell = cells.iter().position(|s| *s == [barycenter]).expect("the barycenter is a vertex");
    let barycenter_initial = outside == [barycenter_cell] && v.iter().all(|&s| b.le(barycenter_cell, s));

    let pushout = glues_as_pushout(&b, &w, &v);
    let checks = WChecks { cylinder, cylinder_search, barycenter_initial, pushout, top_face };
    Ok(WFactorization { b, a, w, v, barycenter: barycenter_cell, certificate, checks })
}

/// An isomorphism `W ≅ A × {0 -> 1}` found by search, with `A` pinned to
/// `A × {0}` and the rest of `W` sent to `A × {1}`.
fn cylinder_search(b: &FinPoset, a: &[usize], w: &[usize]) -> Result<bool> {
    let w_poset = b.subposet(w);
    let cylinder = b.subposet(a).product(&FinPoset::chain(2));
    let allowed: Vec<Vec<bool>> = w
        .iter()
        .map(|s| match a.binary_search(s) {
            Ok(k) => (0..2 * a.len()).map(|t| t == 2 * k).collect(),
            Err(_) => (0..2 * a.len()).map(|t| t % 2 == 1).collect(),
        })
        .collect();
    let found = find_isomorphism(&w_poset.to_category(), &cylinder.to_category(), Some(&allowed), W_SEARCH_CAP)?;
    Ok(found.is_some())
}

/// `W` and `V` are cosieves covering `B`, `W ∩ V` is a cosieve in each, and
/// the order of `B` is generated by the orders of `W` and `V`.
fn glues_as_pushout(b: &FinPoset, w: &[usize], v: &[usize]) -> bool {
    let n = b.size();
    let in_w: Vec<bool> = (0..n).map(|s| w.binary_search(&s).is_ok()).collect();
    let in_v: Vec<bool> = (0..n).map(|s| v.binary_search(&s).is_ok()).collect();
    let covered = (0..n).all(|s| in_w[s] || in_v[s]);
    let upward_in = |piece: &[bool]| {
        (0..n).all(|s| (0..n).all(|t| !(in_w[s] && in_v[s] && piece[t] && b.le(s, t)) || (in_w[t] && in_v[t])))
    };
    let legs_cosieves = upward_in(&in_w) && upward_in(&in_v) && b.is_upward_closed(w) && b.is_upward_closed(v);
    let mut generated: Vec<Vec<bool>> = (0..n)
        .map(|s| (0..n).map(|t| b.le(s, t) && ((in_w[s] && in_w[t]) || (in_v[s] && in_v[t]))).collect())
        .collect();
    for k in 0..n {
        for s in 0..n {
            if generated[s][k] {
                for t in 0..n {
                    if generated[k][t] {
                        generated[s][t] = true;
                    }
                }
            }
        }
    }
    let order_generated = (0..n).all(|s| (0..n).all(|t| generated[s][t] == b.le(s, t)));
    covered && legs_cosieves && order_generated
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{iso_check, walking_arrow, DEFAULT_MAX_PATH_LEN};
    use alloc::string::ToString;

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn two_fold_corner_of_a_point() {
        let f = SetInclusion::new(names(&["a", "b"]), &[0]).unwrap();
        let corner = pushout_product_iter(&f, 2).unwrap();
        assert_eq!(corner.domain, vec![vec![0, 0], vec![0, 1], vec![1, 0]]);
        assert_eq!(pushout_product_iter(&f, 1).unwrap().domain, vec![vec![0]]);
    }

    #[test]
    fn corner_formula_on_small_sets() {
        for l in 0..=3 {
            for mask in 0..(1usize << l) {
                let k: Vec<usize> = (0..l).filter(|&x| mask >> x & 1 == 1).collect();
                let f = SetInclusion::from_sizes(l, &k).unwrap();
                for i in 1..=3 {
                    assert!(corner_formula_check(&f, i).unwrap(), "l={l} k={k:?} i={i}");
                }
            }
        }
        let everything = SetInclusion::from_sizes(2, &[0, 1]).unwrap();
        assert_eq!(pushout_product_iter(&everything, 3).unwrap().domain.len(), 8);
        let nothing = SetInclusion::from_sizes(2, &[]).unwrap();
        assert!(pushout_product_iter(&nothing, 3).unwrap().domain.is_empty());
    }

    #[test]
    fn t01_shapes() {
        assert_eq!(t01(&[]).morphism_count(), 2);
        assert!(iso_check(&t01(&names(&["f"])), &walking_arrow()).unwrap().is_some());
        let pair = t01(&names(&["f", "g"]));
        assert_eq!(pair.morphism_count(), 4);
        assert_eq!(pair.hom(0, 1).len(), 2);
        assert!(pair.hom(1, 0).is_empty());
    }

    #[test]
    fn monoids_are_validated() {
        assert!(FiniteMonoid::new(names(&["1", "a"]), 0, vec![vec![0, 1], vec![1, 0]]).is_ok());
        // a left zero that is not associative with the table
        let bad = FiniteMonoid::new(names(&["1", "a", "b"]), 0, vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 2, 2]]);
        assert!(matches!(bad, Err(Error::InvalidMonoid(_))));
    }

    #[test]
    fn oracle_on_the_free_monoid() {
        let prob =
            MonoidPushoutProblem::new(FiniteMonoid::trivial(), SetInclusion::new(names(&["a"]), &[]).unwrap(), vec![])
                .unwrap();
        let words = monoid_pushout_oracle(&prob, 2).unwrap();
        let expected: BTreeSet<CanonicalWord> =
            [vec![], vec![Letter::L(0)], vec![Letter::L(0), Letter::L(0)]].into_iter().collect();
        assert_eq!(words, expected);
    }

    #[test]
    fn stage_sizes_for_small_problems() {
        let free =
            MonoidPushoutProblem::new(FiniteMonoid::trivial(), SetInclusion::new(names(&["a"]), &[]).unwrap(), vec![])
                .unwrap();
        let stages = monoid_pushout_filtration(&free, 3).unwrap();
        assert_eq!(stages.iter().map(|s| s.carrier.len()).collect::<Vec<_>>(), vec![1, 2, 3, 4]);

        let z2 =
            MonoidPushoutProblem::new(FiniteMonoid::cyclic(2), SetInclusion::new(names(&["a"]), &[]).unwrap(), vec![])
                .unwrap();
        assert_eq!(monoid_pushout_filtration(&z2, 2).unwrap()[2].carrier.len(), 14);

        let glued = MonoidPushoutProblem::new(
            FiniteMonoid::cyclic(2),
            SetInclusion::new(names(&["a"]), &[0]).unwrap(),
            vec![1],
        )
        .unwrap();
        let stages = monoid_pushout_filtration(&glued, 3).unwrap();
        assert!(stages.iter().all(|s| s.carrier.len() == 2));
        assert_eq!(stages[2].attaching.len(), 8);
    }

    #[test]
    fn monoid_filtration_matches_the_oracle() {
        let problems = [
            MonoidPushoutProblem::new(
                FiniteMonoid::cyclic(2),
                SetInclusion::new(names(&["a", "b"]), &[1]).unwrap(),
                vec![1],
            ),
            MonoidPushoutProblem::new(
                FiniteMonoid::idempotent(),
                SetInclusion::new(names(&["a", "b"]), &[0]).unwrap(),
                vec![1],
            ),
        ];
        for prob in problems {
            let prob = prob.unwrap();
            let report = monoid_filtration_report(&prob, 2).unwrap();
            assert!(report.passed(), "{report:?}");
            assert_eq!(report.stage_sizes, report.oracle_sizes);
            let stages = monoid_pushout_filtration(&prob, 2).unwrap();
            assert!(check_stage_multiplication(&prob, &stages[2]));
        }
    }

    #[test]
    fn free_arrow_loops_back() {
        // g: b -> a in the walking arrow, with one free arrow a -> b
        let x = Arc::new(walking_arrow());
        let prob = HomFiltrationProblem::new(x, (1, 0), (1, 1), SetInclusion::new(names(&["m"]), &[]).unwrap(), vec![])
            .unwrap();
        let (stages, report) = muro_hom_filtration(&prob, 2).unwrap();
        assert_eq!(report.stage_sizes, vec![1, 2, 3]);
        assert!(report.passed(), "{report:?}");
        assert_eq!(stages[2].new_cells.len(), 1);
    }

    #[test]
    fn free_arrow_between_unrelated_objects() {
        let x = Arc::new(crate::category::discrete(&["a", "b"]));
        let prob = HomFiltrationProblem::new(x, (0, 1), (0, 1), SetInclusion::new(names(&["m"]), &[]).unwrap(), vec![])
            .unwrap();
        let (_, report) = muro_hom_filtration(&prob, 3).unwrap();
        assert_eq!(report.stage_sizes, vec![0, 1, 1, 1]);
        assert!(report.passed());
    }

    #[test]
    fn glued_arrows_change_nothing() {
        let x = Arc::new(walking_arrow());
        let up = x.hom(0, 1)[0];
        let prob =
            HomFiltrationProblem::new(x, (0, 1), (0, 1), SetInclusion::new(names(&["m"]), &[0]).unwrap(), vec![up])
                .unwrap();
        let (_, report) = muro_hom_filtration(&prob, 3).unwrap();
        assert_eq!(report.stage_sizes, vec![1, 1, 1, 1]);
        assert!(report.passed());
    }

    #[test]
    fn triple_corner_in_cat_is_the_cube_minus_its_top() {
        let point = Arc::new(crate::category::terminal_category());
        let j = CatFunctor::new(point, Arc::new(walking_arrow()), vec![0], vec![0]).unwrap();
        let power = pushout_product_power(&j, 3, DEFAULT_MAX_PATH_LEN).unwrap();
        assert_eq!(power.source().object_count(), 7);
        assert_eq!(power.target().object_count(), 8);
        assert!(power.is_full_embedding());
        assert!(pushout_product_power(&j, 1, DEFAULT_MAX_PATH_LEN).unwrap().same_assignment(&j));
    }

    #[test]
    fn w_factorization_sizes() {
        let f = w_factorization(1).unwrap();
        assert_eq!((f.a.len(), f.w.len(), f.b.size()), (2, 4, 5));
        assert!(f.checks.all_pass(), "{:?}", f.checks);
        assert_eq!(f.checks.cylinder_search, Some(true));
        let zero = w_factorization(0).unwrap();
        assert!(zero.a.is_empty() && zero.w.is_empty() && zero.b.size() == 1);
        assert!(zero.checks.all_pass(), "{:?}", zero.checks);
        let two = w_factorization(2).unwrap();
        assert_eq!(two.b.size(), 25);
        assert!(two.checks.all_pass(), "{:?}", two.checks);
        assert!(matches!(w_factorization(4), Err(Error::CapExceeded { .. })));
    }
}
