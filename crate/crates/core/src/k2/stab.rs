use serde::{Deserialize, Serialize};

use crate::catalog::{AutGroupData, SimpleGroupData, SimpleSpec, SimpleWithAut};
use crate::diagonal::{DiagonalGroup, WElement};
use crate::error::{Error, Result};
use crate::perm::Permutation;

fn require_k2(g: &DiagonalGroup) -> Result<()> {
    if g.k() != 2 {
        return Err(Error::Domain(format!("needs k = 2, got k = {}", g.k())));
    }
    Ok(())
}

fn check_element(g: &DiagonalGroup, x: usize) -> Result<()> {
    if x >= g.t().order() {
        return Err(Error::Domain(format!("{x} is not an element index of {}", g.t().name())));
    }
    Ok(())
}

/// The stabiliser of the points `1` and `x` (that is `D` and `D(1, x)`), found two ways.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoPointStab {
    pub x: usize,
    /// The elements of G_D fixing `x`.
    pub elements: Vec<WElement>,
    /// `(centralising, inverting)` counts read off the elements.
    pub split: (usize, usize),
    /// The same counts from `C_Aut(x)` and the automorphisms inverting `x`, intersected with G.
    pub formula_split: (usize, usize),
}

impl TwoPointStab {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn agrees(&self) -> bool {
        self.split == self.formula_split && self.order() == self.split.0 + self.split.1
    }
}

pub fn two_point_stab(g: &DiagonalGroup, x: usize) -> Result<TwoPointStab> {
    require_k2(g)?;
    check_element(g, x)?;
    let elements: Vec<WElement> = g.d_elements().iter().filter(|h| g.act_index(x, h) == x).cloned().collect();
    let cent = elements.iter().filter(|h| h.top.is_identity()).count();
    let split = (cent, elements.len() - cent);

    let (t, aut) = (g.t(), g.aut());
    let xi = t.inv(x);
    let swap = Permutation::from_cycles(2, &[&[0, 1]])?;
    let id = Permutation::identity(2);
    let mut formula_split = (0, 0);
    for phi in 0..aut.order() {
        let img = aut.apply(phi, x);
        if img == x && g.contains(&g.normalize(vec![0, 0], phi, id.clone())) {
            formula_split.0 += 1;
        }
        if img == xi && g.contains(&g.normalize(vec![0, 0], phi, swap.clone())) {
            formula_split.1 += 1;
        }
    }
    Ok(TwoPointStab {
        x,
        elements,
        split,
        formula_split,
    })
}

/// Both sides of the invertiliser base test for `(1, x, y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseTriple {
    /// `I_Aut(x) ∩ I_Aut(y) = 1`.
    pub invertilisers_meet_trivially: bool,
    /// No non-identity element of G fixes `1`, `x` and `y`.
    pub is_base: bool,
}

impl BaseTriple {
    /// The test is sufficient, never necessary: a positive test must give a base.
    pub fn consistent(&self) -> bool {
        !self.invertilisers_meet_trivially || self.is_base
    }
}

pub fn base_triple_test(g: &DiagonalGroup, x: usize, y: usize) -> Result<BaseTriple> {
    require_k2(g)?;
    check_element(g, x)?;
    check_element(g, y)?;
    let (t, aut) = (g.t(), g.aut());
    let meet = invertiliser_intersection(t, aut, x, y);
    let fixers = g
        .d_elements()
        .iter()
        .filter(|h| g.act_index(x, h) == x && g.act_index(y, h) == y)
        .count();
    Ok(BaseTriple {
        invertilisers_meet_trivially: meet == 1,
        is_base: fixers == 1,
    })
}

fn invertiliser_mask(t: &SimpleGroupData, aut: &AutGroupData, x: usize) -> Vec<bool> {
    let mut mask = vec![false; aut.order()];
    for phi in aut.invertiliser(t, x) {
        mask[phi] = true;
    }
    mask
}

fn invertiliser_intersection(
    t: &SimpleGroupData,
    aut: &AutGroupData,
    x: usize,
    y: usize,
) -> usize {
    let mx = invertiliser_mask(t, aut, x);
    aut.invertiliser(t, y).into_iter().filter(|&phi| mx[phi]).count()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassOutcome {
    pub label: String,
    pub x: usize,
    pub invertiliser: usize,
    /// Least `x0` with `I_Aut(x) ∩ I_Aut(x0) = 1`.
    pub x0: Option<usize>,
    /// Least `x0` making `(1, x, x0)` a base for the largest group `T^2.(Out(T) x S_2)`,
    /// hence for every group with this socle.
    pub base_partner: Option<usize>,
}

/// The class-by-class search: the least invertiliser size `v`, the classes with
/// `|I_Aut(x)| <= v |Out(T)|`, and a partner `x0` for each.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProcedureReport {
    pub t: SimpleSpec,
    pub v: usize,
    pub out: usize,
    pub classes: Vec<ClassOutcome>,
    /// Every class in the list has an `x0`.
    pub success: bool,
    /// Every class in the list has a `base_partner`.
    pub base_success: bool,
}

/// No `phi != 1` fixes both `x` and `y`, and no `phi` inverts both.
fn full_triple_is_base(t: &SimpleGroupData, aut: &AutGroupData, x: usize, y: usize) -> bool {
    let (xi, yi) = (t.inv(x), t.inv(y));
    let id = aut.identity();
    (0..aut.order()).all(|phi| {
        let (a, b) = (aut.apply(phi, x), aut.apply(phi, y));
        !(phi != id && a == x && b == y) && !(a == xi && b == yi)
    })
}

pub fn invertiliser_procedure(s: &SimpleWithAut) -> Result<ProcedureReport> {
    let (t, aut) = (&s.t, &s.aut);
    let id = t.identity();
    let sizes: Vec<usize> = (0..t.order()).map(|y| aut.invertiliser(t, y).len()).collect();
    let v = (0..t.order())
        .filter(|&y| y != id)
        .map(|y| sizes[y])
        .min()
        .ok_or_else(|| Error::Domain("trivial group".into()))?;
    let out = aut.out_order();
    let mut classes = Vec::new();
    for (c, label) in t.classes().iter().zip(t.class_labels()) {
        let x = c[0];
        if x == id || sizes[x] > v * out {
            continue;
        }
        let mx = invertiliser_mask(t, aut, x);
        let x0 = (0..t.order()).find(|&z| aut.invertiliser(t, z).into_iter().filter(|&phi| mx[phi]).count() == 1);
        let base_partner = (0..t.order()).find(|&z| full_triple_is_base(t, aut, x, z));
        classes.push(ClassOutcome {
            label,
            x,
            invertiliser: sizes[x],
            x0,
            base_partner,
        });
    }
    let success = !classes.is_empty() && classes.iter().all(|c| c.x0.is_some());
    let base_success = !classes.is_empty() && classes.iter().all(|c| c.base_partner.is_some());
    Ok(ProcedureReport {
        t: t.spec(),
        v,
        out,
        classes,
        success,
        base_success,
    })
}

/// Which swaps `rho sigma` lie in G, for `k = 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SwapCoset {
    /// No `rho sigma` at all.
    None,
    /// Some `rho sigma`, but none with `rho` inner-diagonal.
    OuterOnly,
    /// Some inner-diagonal `rho`, but not `sigma` itself.
    InnerDiagonal,
    /// `sigma` itself.
    Sigma,
}

pub fn swap_coset(g: &DiagonalGroup) -> Result<SwapCoset> {
    require_k2(g)?;
    let labels: Vec<u32> = g.top_pairs().iter().filter(|(_, s)| !s.is_identity()).map(|(o, _)| *o).collect();
    let inndiag = g.aut().inndiag_labels();
    Ok(if labels.is_empty() {
        SwapCoset::None
    } else if labels.contains(&0) {
        SwapCoset::Sigma
    } else if labels.iter().any(|o| inndiag.contains(o)) {
        SwapCoset::InnerDiagonal
    } else {
        SwapCoset::OuterOnly
    })
}

/// One comparison `|G_{1,x}| > |G_{1,y}|` for `T = L2(q)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderComparison {
    pub case: SwapCoset,
    pub x_label: String,
    pub x_order: usize,
    pub y_label: String,
    pub stab_x: usize,
    pub stab_y: usize,
    pub ok: bool,
}

/// For `T = L2(q)` with `q >= 7`, `q != 9`: compares every class of excluded order
/// (2 when `q = 3 mod 4`, or dividing `q + 1` and above 2) against every class of
/// order `(q - 1)/(2, q - 1)`.
pub fn l2_order_comparisons(g: &DiagonalGroup) -> Result<Vec<OrderComparison>> {
    require_k2(g)?;
    let q = match g.t().spec() {
        SimpleSpec::Psl2 { q } if q >= 7 && q != 9 => q as usize,
        other => return Err(Error::Domain(format!("{other} is not L2(q) with q >= 7, q != 9"))),
    };
    let t = g.t();
    let d = if q % 2 == 1 { 2 } else { 1 };
    let y_order = (q - 1) / d;
    let excluded = |m: usize| (m == 2 && q % 4 == 3) || (m > 2 && (q + 1) % m == 0);
    let classes = t.classes();
    let labels = t.class_labels();
    let mut ys = Vec::new();
    let mut xs = Vec::new();
    for (c, l) in classes.iter().zip(&labels) {
        let o = t.element_order(c[0]);
        if o == y_order {
            ys.push((l.clone(), two_point_stab(g, c[0])?.order()));
        }
        if excluded(o) {
            xs.push((l.clone(), o, two_point_stab(g, c[0])?.order()));
        }
    }
    let case = swap_coset(g)?;
    let mut out = Vec::new();
    for (xl, xo, sx) in &xs {
        for (yl, sy) in &ys {
            out.push(OrderComparison {
                case,
                x_label: xl.clone(),
                x_order: *xo,
                y_label: yl.clone(),
                stab_x: *sx,
                stab_y: *sy,
                ok: sx > sy,
            });
        }
    }
    Ok(out)
}
