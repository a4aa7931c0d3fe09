//! Conservative permutations as Fredkin netlists.
//!
//! Weight classes are fixed in ascending order. Inside class `k` every
//! transposition is a chain of C^(k-1)SWAP gates between strings at Hamming
//! distance two; those gates never touch a lighter class.
//!
//! Fredkin gates fix every weight-one string, so with the extra line held
//! at 0 the class of weight one cannot be permuted at all. When the target
//! moves that class the extra line is held at 1 instead: a data SWAP is
//! then `FRED(x; i, j)` and C^kSWAP has an ancilla-one construction.

use std::fmt;
use std::str::FromStr;

use crate::circuit::{expand_macros, Alphabet, Circuit, Gate, LineRole};
use crate::error::{Error, Result};
use crate::perm::{class_members, weight_decompose, Permutation};

/// A bit string together with its width. Bit `width - 1` is line 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WeightString {
    bits: u32,
    width: u32,
}

impl WeightString {
    pub fn new(bits: u32, width: u32) -> Result<Self> {
        if width == 0 || width > 32 || (width < 32 && bits >> width != 0) {
            return Err(Error::Range(format!(
                "{bits:#b} does not fit in {width} bits"
            )));
        }
        Ok(WeightString { bits, width })
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn width(self) -> u32 {
        self.width
    }

    pub fn weight(self) -> u32 {
        self.bits.count_ones()
    }

    pub fn distance(self, other: WeightString) -> u32 {
        (self.bits ^ other.bits).count_ones()
    }

    /// 0-based lines holding a one, ascending.
    pub fn ones(self) -> Vec<usize> {
        (0..self.width as usize)
            .filter(|&l| self.bits >> (self.width as usize - 1 - l) & 1 == 1)
            .collect()
    }

    fn line_bit(self, line: usize) -> u32 {
        1 << (self.width as usize - 1 - line)
    }
}

impl fmt::Display for WeightString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:0w$b}", self.bits, w = self.width as usize)
    }
}

impl FromStr for WeightString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() || s.len() > 32 || !s.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(Error::Range(format!("{s:?} is not a bit string")));
        }
        WeightString::new(u32::from_str_radix(s, 2).unwrap(), s.len() as u32)
    }
}

fn check_pair(s1: WeightString, s2: WeightString) -> Result<()> {
    if s1.width != s2.width || s1.weight() != s2.weight() {
        return Err(Error::WeightMismatch {
            left: s1.bits,
            right: s2.bits,
        });
    }
    Ok(())
}

/// Equal-weight strings from `s1` to `s2`, consecutive entries at distance
/// two. Each step moves the lowest remaining misplaced one of `s1` to the
/// lowest remaining free position of `s2`.
pub fn hamming_path(s1: WeightString, s2: WeightString) -> Result<Vec<WeightString>> {
    check_pair(s1, s2)?;
    let from: Vec<usize> = s1
        .ones()
        .into_iter()
        .filter(|&l| s2.bits & s1.line_bit(l) == 0)
        .collect();
    let to: Vec<usize> = s2
        .ones()
        .into_iter()
        .filter(|&l| s1.bits & s1.line_bit(l) == 0)
        .collect();
    let mut path = vec![s1];
    let mut cur = s1;
    for (&a, &b) in from.iter().zip(&to) {
        cur.bits ^= cur.line_bit(a) | cur.line_bit(b);
        path.push(cur);
    }
    Ok(path)
}

/// The single C^(k-1)SWAP exchanging two strings at distance two.
fn adjacent_swap(u: WeightString, v: WeightString) -> Gate {
    debug_assert_eq!(u.distance(v), 2);
    let controls = WeightString {
        bits: u.bits & v.bits,
        ..u
    }
    .ones();
    let targets = WeightString {
        bits: u.bits ^ v.bits,
        ..u
    }
    .ones();
    Gate::ckswap(&controls, targets[0], targets[1])
}

/// C^(k-1)SWAP macros on lines `0..width` exchanging `s1` and `s2` inside
/// their weight class `k`. Lighter classes are untouched, heavier ones may
/// be disturbed.
pub fn synth_transposition(s1: WeightString, s2: WeightString) -> Result<Vec<Gate>> {
    check_pair(s1, s2)?;
    if s1 == s2 {
        return Err(Error::EqualStrings(s1.bits));
    }
    let path = hamming_path(s1, s2)?;
    let steps: Vec<Gate> = path.windows(2).map(|w| adjacent_swap(w[0], w[1])).collect();
    let mut gates = steps.clone();
    gates.extend(steps[..steps.len() - 1].iter().rev().cloned());
    Ok(gates)
}

/// C^iSWAP from opposite-valued `pair` lines. Every level below borrows the
/// targets of the level above as its pair. When the pair starts equal the
/// fragment is the identity.
fn borrowed_pair(controls: &[usize], targets: (usize, usize), pair: (usize, usize)) -> Vec<Gate> {
    let (t1, t2) = targets;
    let i = controls.len();
    if i == 1 {
        return vec![Gate::fred(controls[0], t1, t2)];
    }
    let (a1, ai) = (controls[0], controls[i - 1]);
    let half = |x: usize, y: usize| {
        let inner = borrowed_pair(&controls[..i - 1], (ai, x), targets);
        let mut g = vec![Gate::fred(x, a1, y)];
        g.extend(inner.iter().cloned());
        g.push(Gate::fred(ai, t1, t2));
        g.extend(inner);
        g.push(Gate::fred(x, a1, y));
        g
    };
    let mut gates = half(pair.0, pair.1);
    gates.extend(half(pair.1, pair.0));
    gates
}

/// Borrowed-pair C^kSWAP: exact whenever the two `pair` lines start with
/// opposite values, the identity when they start equal.
pub fn synth_ckswap_borrowed_pair(
    controls: &[usize],
    targets: (usize, usize),
    pair: (usize, usize),
) -> Vec<Gate> {
    let (t1, t2) = targets;
    match controls {
        [] => vec![Gate::swap(t1, t2)],
        // The two halves with the C^0SWAP steps left out: each half swaps
        // under a1 or under the pair line it reads, and the two controls
        // sum to a1·(x+y).
        &[a1] => {
            let half = |x: usize, y: usize| {
                vec![
                    Gate::fred(x, a1, y),
                    Gate::fred(a1, t1, t2),
                    Gate::fred(x, a1, y),
                ]
            };
            let mut gates = half(pair.0, pair.1);
            gates.extend(half(pair.1, pair.0));
            gates
        }
        _ => borrowed_pair(controls, targets, pair),
    }
}

/// C^kSWAP with one ancilla line that starts (and ends) at 0.
pub fn synth_ckswap_ancilla(
    controls: &[usize],
    targets: (usize, usize),
    ancilla: usize,
) -> Vec<Gate> {
    let k = controls.len();
    match controls {
        [] => return vec![Gate::swap(targets.0, targets.1)],
        &[a1] => return vec![Gate::fred(a1, targets.0, targets.1)],
        _ => {}
    }
    let lower = borrowed_pair(&controls[..k - 1], (controls[k - 1], ancilla), targets);
    let mut gates = lower.clone();
    gates.push(Gate::fred(ancilla, targets.0, targets.1));
    gates.extend(lower);
    gates
}

/// C^kSWAP with one ancilla line that starts (and ends) at 1. With `k = 0`
/// this is the only way a Fredkin cascade swaps two unconditioned lines.
pub fn ancilla_one_ckswap(
    controls: &[usize],
    targets: (usize, usize),
    ancilla: usize,
) -> Vec<Gate> {
    let (t1, t2) = targets;
    match controls.len() {
        0 => vec![Gate::fred(ancilla, t1, t2)],
        1 => vec![Gate::fred(controls[0], t1, t2)],
        k => {
            // With the ancilla at 1 the borrowed fragment trades it with the
            // last control, so the ancilla reads 0 exactly when the last
            // control is 0 and the others are all 1.
            let lower = borrowed_pair(&controls[..k - 1], (controls[k - 1], ancilla), targets);
            let mut gates = lower.clone();
            gates.push(Gate::fred(ancilla, t1, t2));
            gates.extend(lower);
            gates.push(Gate::fred(ancilla, t1, t2));
            gates.extend(ancilla_one_ckswap(&controls[..k - 1], targets, ancilla));
            gates
        }
    }
}

/// Primitive C^kSWAP on lines `0..k` (controls), `k, k+1` (targets) and,
/// for `k >= 2`, ancilla line `k+2`.
pub fn synth_ckswap(k: usize) -> Result<Circuit> {
    if k > 8 {
        return Err(Error::DepthLimit(k));
    }
    if k == 0 {
        return Err(Error::Range("C^kSWAP needs at least one control".into()));
    }
    let controls: Vec<usize> = (0..k).collect();
    let targets = (k, k + 1);
    let mut roles = vec![LineRole::Data; k + 2];
    if k >= 2 {
        roles.push(LineRole::Ancilla(false));
    }
    let mut c = Circuit::new(roles)?;
    c.extend(synth_ckswap_ancilla(&controls, targets, k + 2))?;
    Ok(c)
}

/// Where one weight class ends in a [`ConservativePlan`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Stage {
    pub weight: usize,
    pub transpositions: usize,
    /// Index one past the last macro emitted for this class.
    pub end: usize,
}

/// Macro-level result of the class-by-class pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConservativePlan {
    pub macros: Circuit,
    pub stages: Vec<Stage>,
}

impl ConservativePlan {
    /// Value held by the extra line.
    pub fn ancilla_value(&self) -> bool {
        let last = self.macros.width() - 1;
        self.macros.roles()[last] == LineRole::Ancilla(true)
    }
}

fn data_permutation(macros: &Circuit, gates: usize, n: usize, ancilla: bool) -> Vec<u32> {
    let w = macros.width();
    (0..1u32 << n)
        .map(|x| {
            let s = macros.gates()[..gates]
                .iter()
                .fold(x << 1 | ancilla as u32, |s, g| g.apply(s, w));
            s >> 1
        })
        .collect()
}

/// C^kSWAP macros on `n + 1` lines realizing `p` on the first `n`.
pub fn plan_conservative(p: &Permutation) -> Result<ConservativePlan> {
    let n = p.width() as usize;
    if !(3..=12).contains(&n) {
        return Err(Error::WidthOutOfRange {
            width: n as u32,
            min: 3,
            max: 12,
        });
    }
    let decomposition = weight_decompose(p)?;
    let ancilla = !decomposition.is_class_identity(1);
    let mut roles = vec![LineRole::Data; n];
    roles.push(LineRole::Ancilla(ancilla));
    let mut macros = Circuit::new(roles)?;
    let mut stages = Vec::new();
    for k in 1..n {
        let members = class_members(n as u32, k as u32);
        let residual = data_permutation(&macros, macros.gates().len(), n, ancilla);
        let mut inverse = residual.clone();
        for &s in &members {
            inverse[residual[s as usize] as usize] = s;
        }
        let correction = Permutation::from_fn(n as u32, |y| {
            if y.count_ones() as usize == k {
                p.apply(inverse[y as usize])
            } else {
                y
            }
        })?;
        let transpositions = correction.to_transpositions();
        for &(a, b) in &transpositions {
            let s1 = WeightString::new(a, n as u32)?;
            let s2 = WeightString::new(b, n as u32)?;
            macros.extend(synth_transposition(s1, s2)?)?;
        }
        stages.push(Stage {
            weight: k,
            transpositions: transpositions.len(),
            end: macros.gates().len(),
        });
    }
    Ok(ConservativePlan { macros, stages })
}

/// Primitive Fredkin circuit on `n + 1` lines realizing `p` on the first
/// `n`. The last line is an ancilla at 0, or at 1 when `p` moves a
/// weight-one string.
pub fn synth_conservative(p: &Permutation) -> Result<Circuit> {
    expand_macros(&plan_conservative(p)?.macros, Alphabet::Fred)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{sample_permutation, SampleKind};

    fn ws(s: &str) -> WeightString {
        s.parse().unwrap()
    }

    /// Reference C^kSWAP on `w` lines.
    fn ckswap_oracle(controls: &[usize], t: (usize, usize), w: usize, s: u32) -> u32 {
        Gate::ckswap(controls, t.0, t.1).apply(s, w)
    }

    fn run(gates: &[Gate], w: usize, s: u32) -> u32 {
        gates.iter().fold(s, |s, g| g.apply(s, w))
    }

    #[test]
    fn path_examples() {
        let p = hamming_path(ws("1100"), ws("0011")).unwrap();
        let shown: Vec<String> = p.iter().map(|s| s.to_string()).collect();
        assert_eq!(shown, ["1100", "0110", "0011"]);
        assert_eq!(
            hamming_path(ws("1010"), ws("1010")).unwrap(),
            vec![ws("1010")]
        );
        assert_eq!(hamming_path(ws("1010"), ws("0110")).unwrap().len(), 2);
        assert!(matches!(
            hamming_path(ws("1100"), ws("1000")),
            Err(Error::WeightMismatch { .. })
        ));
    }

    #[test]
    fn paths_have_unit_steps() {
        for n in 2..=6u32 {
            for a in 0..1u32 << n {
                for b in 0..1u32 << n {
                    if a.count_ones() != b.count_ones() {
                        continue;
                    }
                    let path = hamming_path(
                        WeightString::new(a, n).unwrap(),
                        WeightString::new(b, n).unwrap(),
                    )
                    .unwrap();
                    assert_eq!(path.first().unwrap().bits(), a);
                    assert_eq!(path.last().unwrap().bits(), b);
                    for w in path.windows(2) {
                        assert_eq!(w[0].distance(w[1]), 2);
                        assert_eq!(w[1].weight(), a.count_ones());
                    }
                }
            }
        }
    }

    #[test]
    fn transposition_acts_on_its_class_only() {
        let gates = synth_transposition(ws("1100"), ws("0011")).unwrap();
        assert_eq!(gates.len(), 3);
        for s in 0..16u32 {
            let out = run(&gates, 4, s);
            match (s, s.count_ones()) {
                (0b1100, _) => assert_eq!(out, 0b0011),
                (0b0011, _) => assert_eq!(out, 0b1100),
                (_, 0..=2) => assert_eq!(out, s, "{s:04b}"),
                _ => assert_eq!(out.count_ones(), s.count_ones()),
            }
        }
        let single = synth_transposition(ws("1100"), ws("1010")).unwrap();
        assert_eq!(single, vec![Gate::ckswap(&[0], 1, 2)]);
        assert_eq!(
            synth_transposition(ws("0110"), ws("0110")),
            Err(Error::EqualStrings(0b0110))
        );
    }

    #[test]
    fn ancilla_construction_examples() {
        // controls 0,1; targets 2,3; ancilla 4
        let g = synth_ckswap_ancilla(&[0, 1], (2, 3), 4);
        assert_eq!(run(&g, 5, 0b11010), 0b11100);
        assert_eq!(run(&g, 5, 0b01010), 0b01010);
        assert_eq!(run(&g, 5, 0b11110), 0b11110);
    }

    #[test]
    fn borrowed_pair_examples() {
        // controls 0,1; targets 2,3; pair 4,5
        let g = synth_ckswap_borrowed_pair(&[0, 1], (2, 3), (4, 5));
        assert_eq!(run(&g, 6, 0b110101), 0b111001);
        assert_eq!(run(&g, 6, 0b110110), 0b111010);
        for s in 0..64u32 {
            if (s >> 1 & 1) == (s & 1) {
                assert_eq!(run(&g, 6, s), s);
            }
        }
    }

    #[test]
    fn borrowed_pair_contract() {
        for k in 1..=4usize {
            let w = k + 4;
            let controls: Vec<usize> = (0..k).collect();
            let (t, pair) = ((k, k + 1), (k + 2, k + 3));
            let g = synth_ckswap_borrowed_pair(&controls, t, pair);
            for s in 0..1u32 << w {
                let opposite = (s >> 1 & 1) != (s & 1);
                let want = if opposite {
                    ckswap_oracle(&controls, t, w, s)
                } else {
                    s
                };
                assert_eq!(run(&g, w, s), want, "k={k} s={s:0w$b}");
            }
        }
    }

    #[test]
    fn ancilla_one_matches_oracle() {
        for k in 0..=5usize {
            let w = k + 3;
            let controls: Vec<usize> = (0..k).collect();
            let g = ancilla_one_ckswap(&controls, (k, k + 1), k + 2);
            for s in (0..1u32 << w).filter(|s| s & 1 == 1) {
                assert_eq!(
                    run(&g, w, s),
                    ckswap_oracle(&controls, (k, k + 1), w, s),
                    "k={k}"
                );
            }
        }
    }

    #[test]
    fn ckswap_shapes() {
        let c1 = synth_ckswap(1).unwrap();
        assert_eq!(c1.width(), 3);
        assert_eq!(c1.gates(), &[Gate::fred(0, 1, 2)]);
        assert_eq!(synth_ckswap(4).unwrap().width(), 7);
        assert_eq!(synth_ckswap(9), Err(Error::DepthLimit(9)));
        assert!(synth_ckswap(8).unwrap().is_primitive());
    }

    #[test]
    fn fredkin_truth_table() {
        let p = Permutation::from_fn(3, |x| Gate::fred(0, 1, 2).apply(x, 3)).unwrap();
        let c = synth_conservative(&p).unwrap();
        assert_eq!(c.width(), 4);
        assert_eq!(c.roles()[3], LineRole::Ancilla(false));
        assert!(crate::verify::verify_realizes(&c, &p)
            .unwrap()
            .verdict
            .passed());
    }

    #[test]
    fn stages_fix_lighter_classes() {
        for seed in 0..20 {
            let p = sample_permutation(5, SampleKind::Conservative, seed).unwrap();
            let plan = plan_conservative(&p).unwrap();
            for stage in &plan.stages {
                let got = data_permutation(&plan.macros, stage.end, 5, plan.ancilla_value());
                for x in 0..32u32 {
                    if x.count_ones() as usize <= stage.weight {
                        assert_eq!(
                            got[x as usize],
                            p.apply(x),
                            "seed {seed} stage {}",
                            stage.weight
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn fredkin_gates_fix_weight_one_states() {
        let w = 5;
        for a in 0..w {
            for b in 0..w {
                for c in (0..w).filter(|&c| c != a && c != b && a != b) {
                    for s in (0..w).map(|l| 1u32 << l) {
                        assert_eq!(Gate::fred(a, b, c).apply(s, w), s);
                    }
                }
            }
        }
    }

    #[test]
    fn weight_one_moves_need_ancilla_one() {
        let p = Permutation::from_fn(4, |x| Gate::swap(0, 1).apply(x, 4)).unwrap();
        let c = synth_conservative(&p).unwrap();
        assert_eq!(c.roles()[4], LineRole::Ancilla(true));
        assert!(crate::verify::verify_realizes(&c, &p)
            .unwrap()
            .verdict
            .passed());
    }

    #[test]
    fn identity_is_empty() {
        let c = synth_conservative(&Permutation::identity(4).unwrap()).unwrap();
        assert!(c.gates().is_empty());
        assert_eq!(c.width(), 5);
    }

    #[test]
    fn rejects_non_conservative() {
        let p = Permutation::transposition(3, 0, 1).unwrap();
        assert!(matches!(
            synth_conservative(&p),
            Err(Error::NotConservative { .. })
        ));
    }
}
