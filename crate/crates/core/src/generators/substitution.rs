use std::collections::BTreeSet;

use crate::coord::{Coordinate, QuadField, QuadInt, TOL_EQ};
use crate::error::{Error, Result};
use crate::geometry::{check_region, Cluster, Patch, Point, PointSource, Region, Representation};

/// A one-dimensional tile substitution.
///
/// `lengths` must be a Perron eigenvector: `λ·len(x) = Σ len(σ(x))`.
#[derive(Clone, Debug)]
pub struct SubstitutionRule {
    pub name: String,
    pub words: Vec<Vec<usize>>,
    pub lengths: Vec<Coordinate>,
    pub inflation: Coordinate,
    pub colors: Vec<usize>,
}

impl SubstitutionRule {
    /// `a → ab, b → a`, tile lengths `(τ, 1)`.
    pub fn fibonacci() -> SubstitutionRule {
        let g = QuadField::GOLDEN;
        SubstitutionRule {
            name: "fibonacci".into(),
            words: vec![vec![0, 1], vec![0]],
            lengths: vec![QuadInt::tau(g).into(), QuadInt::integer(1, g).into()],
            inflation: QuadInt::tau(g).into(),
            colors: vec![0, 1],
        }
    }

    /// `a → ab, b → ba`, unit tiles.
    pub fn thue_morse() -> SubstitutionRule {
        SubstitutionRule {
            name: "thue_morse".into(),
            words: vec![vec![0, 1], vec![1, 0]],
            lengths: vec![1.0.into(), 1.0.into()],
            inflation: 2.0.into(),
            colors: vec![0, 1],
        }
    }

    /// `a → ab, b → aa`, unit tiles.
    pub fn period_doubling() -> SubstitutionRule {
        SubstitutionRule {
            name: "period_doubling".into(),
            words: vec![vec![0, 1], vec![0, 0]],
            lengths: vec![1.0.into(), 1.0.into()],
            inflation: 2.0.into(),
            colors: vec![0, 1],
        }
    }

    pub fn preset(name: &str) -> Option<SubstitutionRule> {
        match name {
            "fibonacci" => Some(Self::fibonacci()),
            "thue_morse" => Some(Self::thue_morse()),
            "period_doubling" => Some(Self::period_doubling()),
            _ => None,
        }
    }

    pub fn alphabet(&self) -> usize {
        self.words.len()
    }

    /// Applies the substitution `k` times to a word.
    pub fn expand(&self, word: &[usize], k: usize) -> Vec<usize> {
        let mut w = word.to_vec();
        for _ in 0..k {
            w = w.iter().flat_map(|&x| self.words[x].iter().copied()).collect();
        }
        w
    }

    fn validate(&self) -> Result<()> {
        let n = self.alphabet();
        if n == 0 || self.lengths.len() != n || self.colors.len() != n {
            return Err(Error::InvalidParameter(
                "words, lengths and colors must have one entry per letter".into(),
            ));
        }
        if self.words.iter().flatten().any(|&x| x >= n) || self.words.iter().any(|w| w.is_empty()) {
            return Err(Error::InvalidParameter("expansion uses an unknown letter or is empty".into()));
        }
        if self.lengths.iter().any(|l| !(l.to_f64() > 0.0) || !l.to_f64().is_finite()) {
            return Err(Error::InvalidParameter("tile lengths must be positive".into()));
        }
        if !is_primitive(&self.words) {
            return Err(Error::NonPrimitive);
        }
        for (x, w) in self.words.iter().enumerate() {
            let sum = w
                .iter()
                .fold(self.lengths[0].zero_like(), |acc, &y| acc + self.lengths[y]);
            let lhs = mul(self.inflation, self.lengths[x]);
            let ok = match (lhs, sum) {
                (Coordinate::Exact(a), Coordinate::Exact(b)) if a.field == b.field => a == b,
                _ => (lhs.to_f64() - sum.to_f64()).abs() <= 1e-9 * sum.to_f64().abs().max(1.0),
            };
            if !ok {
                return Err(Error::InvalidParameter(format!(
                    "tile lengths are not an eigenvector (letter {x})"
                )));
            }
        }
        Ok(())
    }
}

fn mul(a: Coordinate, b: Coordinate) -> Coordinate {
    match (a, b) {
        (Coordinate::Exact(x), Coordinate::Exact(y)) if x.field == y.field => Coordinate::Exact(x * y),
        _ => Coordinate::Float(a.to_f64() * b.to_f64()),
    }
}

/// Some power of the boolean incidence matrix is strictly positive
/// (Wielandt: power `(n-1)² + 1` suffices).
fn is_primitive(words: &[Vec<usize>]) -> bool {
    let n = words.len();
    let m: Vec<Vec<bool>> = words
        .iter()
        .map(|w| (0..n).map(|j| w.contains(&j)).collect())
        .collect();
    let mut p = m.clone();
    for _ in 0..(n - 1) * (n - 1) {
        p = (0..n)
            .map(|i| (0..n).map(|j| (0..n).any(|k| p[i][k] && m[k][j])).collect())
            .collect();
    }
    p.iter().flatten().all(|&b| b)
}

/// Legal two-letter words: those occurring in some iterate `σ^k(x)`.
fn legal_pairs(words: &[Vec<usize>]) -> BTreeSet<(usize, usize)> {
    let mut set: BTreeSet<(usize, usize)> = words
        .iter()
        .flat_map(|w| w.windows(2).map(|p| (p[0], p[1])))
        .collect();
    loop {
        let mut next = set.clone();
        for &(u, v) in &set {
            let w: Vec<usize> = words[u].iter().chain(&words[v]).copied().collect();
            next.extend(w.windows(2).map(|p| (p[0], p[1])));
        }
        if next.len() == set.len() {
            return set;
        }
        set = next;
    }
}

/// Smallest `p ≥ 1` with `f^p(x) = x`, if `x` is periodic under `f`.
fn return_time(f: impl Fn(usize) -> usize, x: usize, n: usize) -> Option<usize> {
    let mut y = x;
    for p in 1..=n {
        y = f(y);
        if y == x {
            return Some(p);
        }
    }
    None
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The fixed-point tiling of a substitution: tile left endpoints colored by letter.
///
/// With only a right seed `r` the tiling starts at 0 and covers `[0, ∞)`; with a
/// left seed `l` as well, the tile `r` starts at 0 and the tile `l` ends there.
pub struct SubstitutionSource {
    rule: SubstitutionRule,
    left: Option<usize>,
    right: usize,
    power: usize,
    colors: usize,
    representation: Representation,
}

const MAX_LEVEL: usize = 80;

impl SubstitutionSource {
    pub fn new(rule: SubstitutionRule, left: Option<usize>, right: usize) -> Result<SubstitutionSource> {
        rule.validate()?;
        let n = rule.alphabet();
        if right >= n || left.is_some_and(|l| l >= n) {
            return Err(Error::IllegalSeed("seed letter outside the alphabet".into()));
        }
        let first = |x: usize| rule.words[x][0];
        let last = |x: usize| *rule.words[x].last().expect("nonempty");
        let mut power = return_time(first, right, n).ok_or_else(|| {
            Error::IllegalSeed(format!("letter {right} never begins its own expansion"))
        })?;
        if let Some(l) = left {
            let q = return_time(last, l, n).ok_or_else(|| {
                Error::IllegalSeed(format!("letter {l} never ends its own expansion"))
            })?;
            power = power / gcd(power, q) * q;
            if !legal_pairs(&rule.words).contains(&(l, right)) {
                return Err(Error::IllegalSeed(format!("pair ({l}, {right}) is not legal")));
            }
        }
        let representation = match rule.lengths.iter().try_fold(None, |f, c| match (f, c) {
            (None, Coordinate::Exact(q)) => Some(Some(q.field)),
            (Some(g), Coordinate::Exact(q)) if q.field == g => Some(Some(g)),
            _ => None,
        }) {
            Some(Some(f)) => Representation::Exact(f),
            _ => Representation::Float,
        };
        let colors = rule.colors.iter().max().map_or(1, |c| c + 1);
        Ok(SubstitutionSource {
            rule,
            left,
            right,
            power,
            colors,
            representation,
        })
    }

    /// One-sided Fibonacci tiling starting with `a` at 0.
    pub fn fibonacci() -> SubstitutionSource {
        SubstitutionSource::new(SubstitutionRule::fibonacci(), None, 0).expect("valid")
    }

    /// Two-sided Thue–Morse tiling with seed `a.a`.
    pub fn thue_morse() -> SubstitutionSource {
        SubstitutionSource::new(SubstitutionRule::thue_morse(), Some(0), 0).expect("valid")
    }

    pub fn period_doubling() -> SubstitutionSource {
        SubstitutionSource::new(SubstitutionRule::period_doubling(), None, 0).expect("valid")
    }

    pub fn rule(&self) -> &SubstitutionRule {
        &self.rule
    }

    fn coord(&self, c: Coordinate) -> Coordinate {
        match self.representation {
            Representation::Exact(_) => c,
            Representation::Float => Coordinate::Float(c.to_f64()),
        }
    }

    /// `lengths[k][x]` = length of the level-`k` supertile of letter `x`.
    fn level_lengths(&self, need_left: f64, need_right: f64) -> Result<Vec<Vec<Coordinate>>> {
        let mut levels = vec![self.rule.lengths.iter().map(|&c| self.coord(c)).collect::<Vec<_>>()];
        loop {
            let k = levels.len() - 1;
            let cur = &levels[k];
            let right_ok = cur[self.right].to_f64() >= need_right;
            let left_ok = self.left.is_none_or(|l| cur[l].to_f64() >= need_left);
            if k % self.power == 0 && right_ok && left_ok {
                return Ok(levels);
            }
            if k >= MAX_LEVEL {
                return Err(Error::InvalidParameter("region too large for exact supertiles".into()));
            }
            let next = self
                .rule
                .words
                .iter()
                .map(|w| w.iter().fold(cur[0].zero_like(), |acc, &y| acc + cur[y]))
                .collect();
            levels.push(next);
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn descend(
        &self,
        levels: &[Vec<Coordinate>],
        letter: usize,
        level: usize,
        start: Coordinate,
        lo: f64,
        hi: f64,
        region: &Region,
        parts: &mut [Vec<Point>],
    ) {
        let s = start.to_f64();
        let len = levels[level][letter].to_f64();
        let slack = 1e3 * TOL_EQ;
        if s > hi + slack || s + len < lo - slack {
            return;
        }
        if level == 0 {
            let p = Point::new(&[start]);
            if region.contains(&p) {
                parts[self.rule.colors[letter]].push(p);
            }
            return;
        }
        let mut pos = start;
        for &y in &self.rule.words[letter] {
            self.descend(levels, y, level - 1, pos, lo, hi, region, parts);
            pos = pos + levels[level - 1][y];
        }
    }
}

impl PointSource for SubstitutionSource {
    fn name(&self) -> String {
        self.rule.name.clone()
    }

    fn dim(&self) -> usize {
        1
    }

    fn colors(&self) -> usize {
        self.colors
    }

    fn representation(&self) -> Representation {
        self.representation
    }

    fn window(&self, region: &Region) -> Result<Patch> {
        check_region(1, region)?;
        let (lo, hi) = region.bounds();
        let (lo, hi) = (lo[0], hi[0]);
        let levels = self.level_lengths(-lo, hi)?;
        let top = levels.len() - 1;
        let zero = self.coord(self.rule.lengths[0]).zero_like();
        let mut parts = vec![Vec::new(); self.colors];
        self.descend(&levels, self.right, top, zero, lo, hi, region, &mut parts);
        if let Some(l) = self.left {
            let start = zero - levels[top][l];
            self.descend(&levels, l, top, start, lo, hi, region, &mut parts);
        }
        Ok(Patch::new(region.clone(), Cluster::new(parts)))
    }

    fn fourier_module(&self) -> Option<Vec<f64>> {
        // Fibonacci tilings are model sets with the golden dual module
        if self.rule.words == SubstitutionRule::fibonacci().words
            && self.representation == Representation::Exact(QuadField::GOLDEN)
        {
            let f = QuadField::GOLDEN;
            let root_d = f.tau() - f.tau_conj();
            let scale = self.rule.lengths[1].to_f64();
            return Some(vec![-f.tau_conj() / root_d / scale, 1.0 / root_d / scale]);
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fibonacci_matches_word_expansion() {
        let src = SubstitutionSource::fibonacci();
        let tau = QuadField::GOLDEN.tau();
        let end = tau.powi(6);
        let word = src.rule().expand(&[0], 5);
        let pts = src.window(&Region::interval(0.0, end - 1e-6)).unwrap().points_1d();
        assert_eq!(pts.len(), word.len());
        let mut x = 0.0;
        for ((p, c), &letter) in pts.iter().zip(&word) {
            assert!((p - x).abs() < 1e-9);
            assert_eq!(*c, letter);
            x += if letter == 0 { tau } else { 1.0 };
        }
    }

    #[test]
    fn period_doubling_is_nonnegative_integers() {
        let src = SubstitutionSource::period_doubling();
        let pts = src.window(&Region::interval(-5.5, 40.2)).unwrap().points_1d();
        let xs: Vec<f64> = pts.iter().map(|p| p.0).collect();
        let want: Vec<f64> = (0..=40).map(|i| i as f64).collect();
        assert_eq!(xs, want);
    }

    #[test]
    fn thue_morse_bit_parity() {
        let src = SubstitutionSource::thue_morse();
        let pts = src.window(&Region::interval(0.0, 63.0)).unwrap().points_1d();
        for (x, c) in pts {
            assert_eq!(c as u32, (x as u32).count_ones() % 2, "position {x}");
        }
        // left half mirrors: position -1 is letter a (σ²(a) = abba ends with a)
        let left = src.window(&Region::interval(-4.0, -1.0)).unwrap().points_1d();
        let colors: Vec<usize> = left.iter().map(|p| p.1).collect();
        assert_eq!(colors, vec![0, 1, 1, 0]);
    }

    #[test]
    fn rejects_non_primitive() {
        let rule = SubstitutionRule {
            name: "x".into(),
            words: vec![vec![0, 0], vec![1, 1]],
            lengths: vec![1.0.into(), 1.0.into()],
            inflation: 2.0.into(),
            colors: vec![0, 1],
        };
        assert!(matches!(SubstitutionSource::new(rule, None, 0), Err(Error::NonPrimitive)));
    }

    #[test]
    fn rejects_illegal_seed() {
        // b begins σ(b) = ba, but "bb" never occurs in Fibonacci
        let r = SubstitutionSource::new(SubstitutionRule::fibonacci(), None, 1);
        assert!(matches!(r, Err(Error::IllegalSeed(_))));
    }

    #[test]
    fn eigenvector_equation_checked() {
        let mut rule = SubstitutionRule::fibonacci();
        rule.lengths[1] = 2.0.into();
        assert!(SubstitutionSource::new(rule, None, 0).is_err());
    }
}
