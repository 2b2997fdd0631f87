//! Text pictures of the modules: one row of K-types joined by raising and
//! lowering arrows, with the zero arrows left out.
//!
//! Each picture has up to four lines: raising coefficients above the arrows,
//! the nodes and arrows, lowering coefficients below the arrows, and the
//! weights under the nodes.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{transition_coeff, CaseLabel, Direction, FactorKind, GKDescriptor};

const NODE_W: usize = 5;
const ARROW_W: usize = 7;

pub const GENERATOR: char = '•';
pub const PLAIN: char = '∘';
pub const DS_PLUS_GEN: char = '⊙';
pub const DS_MINUS_GEN: char = '⊗';
pub const FD_TOP: char = '⊛';
pub const FD_LOW: char = '⊖';
pub const FD_HIGH: char = '⊕';

/// What to draw.
#[derive(Clone, Debug)]
pub enum DiagramSpec {
    Descriptor(GKDescriptor),
    /// The weight-zero function from the limit formula, annihilated by Δ₀².
    Kronecker,
    /// Taylor coefficients A_{t,ℓ} (t ≤ r) of the Eisenstein series at s₀ = k - 1.
    Laurent { k: i64, r: u32 },
}

pub fn diagram(spec: &DiagramSpec) -> String {
    match spec {
        DiagramSpec::Descriptor(d) => render_descriptor(d),
        DiagramSpec::Kronecker => render_kronecker(),
        DiagramSpec::Laurent { k, r } => render_laurent(*k, *r),
    }
}

#[derive(Clone, Debug)]
enum Item {
    Node { glyph: char, weight: i64 },
    Ellipsis,
}

#[derive(Clone, Debug, Default)]
struct Arrow {
    right: bool,
    left: bool,
    above: String,
    below: String,
}

impl Arrow {
    fn glyph(&self) -> &'static str {
        match (self.right, self.left) {
            (true, true) => "⇄",
            (true, false) => "→",
            (false, true) => "←",
            (false, false) => "",
        }
    }

    fn both() -> Self {
        Arrow { right: true, left: true, ..Arrow::default() }
    }
}

fn center(s: &str, w: usize) -> String {
    format!("{s:^w$}")
}

/// Lays out one row; returns the four text lines.
fn layout(items: &[Item], arrows: &[Arrow]) -> [String; 4] {
    let mut lines: [String; 4] = Default::default();
    for (i, item) in items.iter().enumerate() {
        match item {
            Item::Node { glyph, weight } => {
                lines[0] += &" ".repeat(NODE_W);
                lines[1] += &center(&glyph.to_string(), NODE_W);
                lines[2] += &" ".repeat(NODE_W);
                lines[3] += &center(&weight.to_string(), NODE_W);
            }
            Item::Ellipsis => {
                lines[0] += &" ".repeat(NODE_W);
                lines[1] += &center("⋯", NODE_W);
                lines[2] += &" ".repeat(NODE_W);
                lines[3] += &" ".repeat(NODE_W);
            }
        }
        if let Some(a) = arrows.get(i) {
            lines[0] += &center(&a.above, ARROW_W);
            lines[1] += &center(a.glyph(), ARROW_W);
            lines[2] += &center(&a.below, ARROW_W);
            lines[3] += &" ".repeat(ARROW_W);
        }
    }
    lines.map(|l| l.trim_end().to_string())
}

/// Collapses runs of more than three plain nodes to first, ⋯, last.
fn elide(nodes: Vec<(char, i64)>) -> Vec<Vec<(char, i64)>> {
    let mut groups: Vec<Vec<(char, i64)>> = Vec::new();
    let mut i = 0;
    while i < nodes.len() {
        if nodes[i].0 == PLAIN {
            let mut j = i;
            while j < nodes.len() && nodes[j].0 == PLAIN {
                j += 1;
            }
            if j - i > 3 {
                groups.push(vec![nodes[i]]);
                groups.push(vec![]);
                groups.push(vec![nodes[j - 1]]);
            } else {
                groups.push(nodes[i..j].to_vec());
            }
            i = j;
        } else {
            groups.push(vec![nodes[i]]);
            i += 1;
        }
    }
    groups
}

fn in_support(d: &GKDescriptor, j: i64) -> bool {
    d.ktype_multiplicity(j) > 0
}

/// Marker for the weight-j node of a descriptor picture.
fn glyph_for(d: &GKDescriptor, j: i64) -> char {
    let k = d.k;
    if j == k {
        return GENERATOR;
    }
    let bottom = &d.socle[0];
    for f in bottom {
        let (lo, hi) = f.support();
        match f.kind {
            FactorKind::DSPlus | FactorKind::LDSPlus if lo == Some(j) => return DS_PLUS_GEN,
            FactorKind::DSMinus | FactorKind::LDSMinus if hi == Some(j) => return DS_MINUS_GEN,
            _ => {}
        }
    }
    if d.factors().iter().any(|f| f.kind == FactorKind::FD) {
        if k < 1 && j == -k {
            return FD_TOP;
        }
        if k > 1 && j == 2 - k {
            return FD_LOW;
        }
        if k > 1 && j == k - 2 {
            return FD_HIGH;
        }
    }
    PLAIN
}

/// Coefficient of R on f_j, normalised by f_{k+2r} = R^r f and f_{k-2r} = L^r f.
fn raise_coeff(k: i64, j: i64) -> i64 {
    if j >= k {
        1
    } else {
        transition_coeff(k, (k - j) / 2, Direction::Up).expect("r ≥ 1")
    }
}

fn lower_coeff(k: i64, j: i64) -> i64 {
    if j <= k {
        1
    } else {
        transition_coeff(k, (j - k) / 2, Direction::Down).expect("r ≥ 1")
    }
}

pub fn render_descriptor(d: &GKDescriptor) -> String {
    let k = d.k;
    let marks = [k, -k, 2 - k, k - 2];
    let lo_w = marks.iter().min().unwrap() - 4;
    let hi_w = marks.iter().max().unwrap() + 4;
    let nodes: Vec<(char, i64)> = (lo_w..=hi_w)
        .filter(|j| (j - k).rem_euclid(2) == 0 && in_support(d, *j))
        .map(|j| (glyph_for(d, j), j))
        .collect();
    let first = nodes.first().map(|n| n.1).unwrap_or(k);
    let last = nodes.last().map(|n| n.1).unwrap_or(k);
    let open_left = in_support(d, first - 2);
    let open_right = in_support(d, last + 2);

    let mut items = Vec::new();
    let mut arrows = Vec::new();
    if open_left {
        items.push(Item::Ellipsis);
        arrows.push(Arrow::both());
    }
    let groups = elide(nodes);
    for (gi, g) in groups.iter().enumerate() {
        if g.is_empty() {
            items.push(Item::Ellipsis);
            arrows.push(Arrow::both());
            continue;
        }
        for (ni, (glyph, j)) in g.iter().enumerate() {
            items.push(Item::Node { glyph: *glyph, weight: *j });
            let next_is_node = ni + 1 < g.len()
                || groups.get(gi + 1).is_some_and(|n| !n.is_empty());
            if next_is_node {
                let (r, l) = (raise_coeff(k, *j), lower_coeff(k, j + 2));
                arrows.push(Arrow {
                    right: r != 0,
                    left: l != 0,
                    above: if r != 0 { r.to_string() } else { String::new() },
                    below: if l != 0 { l.to_string() } else { String::new() },
                });
            } else if gi + 1 < groups.len() || open_right {
                arrows.push(Arrow::both());
            }
        }
    }
    if open_right {
        items.push(Item::Ellipsis);
    }
    let lines = layout(&items, &arrows);

    let mut out = format!("case {}, k = {}, ν = {}: {}\n", d.case, k, d.nu, d.sequence());
    for l in &lines {
        out += l;
        out.push('\n');
    }
    out += &legend(d);
    out
}

fn legend(d: &GKDescriptor) -> String {
    let mut s = format!("{GENERATOR} generator (weight {})", d.k);
    let mut seen = vec![GENERATOR];
    let k = d.k;
    for j in [2 - k, k - 2, -k] {
        let g = glyph_for(d, j);
        if seen.contains(&g) || g == PLAIN {
            continue;
        }
        seen.push(g);
        let what = match g {
            DS_PLUS_GEN => "lowest weight vector of the holomorphic submodule",
            DS_MINUS_GEN => "highest weight vector of the antiholomorphic submodule",
            FD_TOP => "top of the finite-dimensional layer",
            FD_LOW => "lowest weight of the finite-dimensional layer",
            FD_HIGH => "highest weight of the finite-dimensional layer",
            _ => continue,
        };
        s += &format!("; {g} {what} (weight {j})");
    }
    s += "; zero arrows are omitted\n";
    s
}

/// The weight-zero function φ with Δ₀φ constant: φ on top, the constant at
/// weight zero below with no arrows leaving it.
pub fn render_kronecker() -> String {
    let mut items = vec![Item::Ellipsis];
    let mut arrows = vec![Arrow::both()];
    for j in [-6i64, -4, -2, 0, 2, 4, 6] {
        let glyph = if j == 0 { DS_PLUS_GEN } else { PLAIN };
        items.push(Item::Node { glyph, weight: j });
        arrows.push(match j {
            -2 => Arrow { right: true, ..Arrow::default() },
            0 => Arrow { left: true, ..Arrow::default() },
            _ => Arrow::both(),
        });
    }
    items.push(Item::Ellipsis);
    let lines = layout(&items, &arrows);
    // column of the weight-zero node
    let col = NODE_W + ARROW_W + 3 * (NODE_W + ARROW_W) + NODE_W / 2;
    let mut out = String::from("φ at weight 0 with Δ₀²φ = 0: the weight-0 K-type has multiplicity 2\n");
    out += &format!("{}{}\n", " ".repeat(col), GENERATOR);
    out += &format!("{}L₀ ↙   ↘ R₀\n", " ".repeat(col - 5));
    out += &lines[1];
    out.push('\n');
    out += &lines[3];
    out.push('\n');
    out += &format!(
        "{GENERATOR} φ; {DS_PLUS_GEN} the constant Δ₀φ, killed by R₀ and L₀; zero arrows are omitted\n"
    );
    out
}

/// Figure of the Taylor coefficients: rows t = r, …, 0; in row t the node at
/// weight ℓ is A_{t,ℓ}. Diagonal arrows drop one row.
pub fn render_laurent(k: i64, r: u32) -> String {
    let weights: Vec<i64> = (-k - 2..=k + 2).step_by(2).collect();
    let glyph = |t: u32, l: i64| -> char {
        if l == -k {
            DS_PLUS_GEN
        } else if l == 2 - k {
            FD_LOW
        } else if l == k - 2 {
            FD_HIGH
        } else if l == k {
            if t == 0 {
                FD_TOP
            } else {
                GENERATOR
            }
        } else {
            PLAIN
        }
    };
    let mut out = format!("Taylor coefficients of E_(ℓ,s) at s₀ = {}, rows t = {r}…0\n", k - 1);
    let mut diag_line = String::new();
    for t in (0..=r).rev() {
        let mut items = vec![Item::Ellipsis];
        let mut arrows = vec![Arrow::both()];
        for (i, l) in weights.iter().enumerate() {
            items.push(Item::Node { glyph: glyph(t, *l), weight: *l });
            if i + 1 < weights.len() {
                let next = weights[i + 1];
                let a = if *l == -k {
                    Arrow { left: true, ..Arrow::default() }
                } else if next == k {
                    Arrow { right: true, ..Arrow::default() }
                } else {
                    Arrow::both()
                };
                arrows.push(a);
            } else {
                arrows.push(Arrow::both());
            }
        }
        items.push(Item::Ellipsis);
        let lines = layout(&items, &arrows);
        if !diag_line.is_empty() {
            out += &diag_line;
            out.push('\n');
        }
        out += &format!("{}   t={t}\n", lines[1]);
        if t > 0 {
            // diagonal arrows: R from weight -k, L from weight k
            let pos = |idx: usize| NODE_W + ARROW_W + idx * (NODE_W + ARROW_W) + NODE_W;
            let ik = weights.iter().position(|w| *w == -k).unwrap();
            let jk = weights.iter().position(|w| *w == k).unwrap();
            let mut d: Vec<char> = vec![' '; pos(jk) + ARROW_W];
            d[pos(ik) + ARROW_W / 2] = '↘';
            d[pos(jk - 1) + ARROW_W / 2] = '↙';
            diag_line = d.into_iter().collect::<String>().trim_end().to_string();
        }
    }
    let last = layout(
        &std::iter::once(Item::Ellipsis)
            .chain(weights.iter().map(|l| Item::Node { glyph: PLAIN, weight: *l }))
            .collect::<Vec<_>>(),
        &vec![Arrow::default(); weights.len() + 1],
    );
    out += &last[3];
    out.push('\n');
    let (p, m, f) = laurent_module_dims(k, r);
    out += &format!(
        "module generated by A_({r},{k}): DS+({}) ×{p}, DS-({}) ×{m}, FD({}) ×{f}\n",
        k - 1,
        k - 1,
        k - 1
    );
    out
}

type Vector = BTreeMap<(u32, i64), BigRational>;

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

/// L A_{t,ℓ} = ½(k-ℓ) A_{t,ℓ-2} + ½ A_{t-1,ℓ-2} and
/// R A_{t,ℓ} = ½(k+ℓ) A_{t,ℓ+2} + ½ A_{t-1,ℓ+2} at s₀ = k - 1.
fn apply_grid(k: i64, v: &Vector, up: bool) -> Vector {
    let mut out = Vector::new();
    for ((t, l), c) in v {
        let (nl, same) = if up { (l + 2, k + l) } else { (l - 2, k - l) };
        let mut add = |key: (u32, i64), x: BigRational| {
            let e = out.entry(key).or_insert_with(BigRational::zero);
            *e += x;
        };
        if same != 0 {
            add((*t, nl), c * half() * BigRational::from_integer(same.into()));
        }
        if *t > 0 {
            add((t - 1, nl), c * half());
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Echelon reduction of `v` against `basis` (pivot = first key).
fn reduce(basis: &[Vector], v: &Vector) -> Vector {
    let mut v = v.clone();
    for b in basis {
        let (pk, pc) = b.iter().next().expect("nonzero basis vector");
        if let Some(c) = v.get(pk).cloned() {
            let f = c / pc;
            for (key, x) in b {
                let e = v.entry(*key).or_insert_with(BigRational::zero);
                *e -= &f * x;
            }
            v.retain(|_, c| !c.is_zero());
        }
    }
    v
}

fn insert_reduced(basis: &mut Vec<Vector>, v: Vector) {
    // keep pivots distinct: reduce existing vectors is unnecessary for rank
    let pivot = *v.keys().next().unwrap();
    let pos = basis.iter().position(|b| *b.keys().next().unwrap() > pivot).unwrap_or(basis.len());
    basis.insert(pos, v);
}

/// Dimensions of the module generated by A_{r,k} in the weights -k, 0 (or
/// 2-k) and k; with multiplicity-one factors these are the multiplicities
/// of DS⁻, FD and DS⁺.
pub fn laurent_module_dims(k: i64, r: u32) -> (u32, u32, u32) {
    let margin = 2 * r as i64 + 6;
    let (lo, hi) = (-k - margin, k + margin);
    let mut spaces: BTreeMap<i64, Vec<Vector>> = BTreeMap::new();
    let mut start = Vector::new();
    start.insert((r, k), BigRational::one());
    let mut queue = vec![(k, start)];
    while let Some((l, v)) = queue.pop() {
        let basis = spaces.entry(l).or_default();
        let red = reduce(basis, &v);
        if red.is_empty() {
            continue;
        }
        // full reduction keeps the pivot invariant
        insert_reduced(basis, red.clone());
        for up in [true, false] {
            let nl = if up { l + 2 } else { l - 2 };
            if nl < lo || nl > hi {
                continue;
            }
            let w = apply_grid(k, &red, up);
            if !w.is_empty() {
                queue.push((nl, w));
            }
        }
    }
    let dim = |l: i64| spaces.get(&l).map_or(0, |b| b.len() as u32);
    let fd_weight = if k > 2 { 2 - k } else { 0 };
    (dim(k), dim(-k), dim(fd_weight))
}

/// Picture of the weight-k harmonic form's module for each of the nine labels.
pub fn case_gallery(k_for: impl Fn(CaseLabel) -> i64) -> String {
    let mut s = String::new();
    for c in CaseLabel::ALL {
        let k = k_for(c);
        let d = super::descriptor(c, k, crate::coeffring::Certainty::Exact);
        s += &render_descriptor(&d);
        s.push('\n');
    }
    s
}
