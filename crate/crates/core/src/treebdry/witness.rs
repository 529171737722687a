use alloc::vec::Vec;

use super::boundary::{attracting_endpoint, fixed_endpoints, BoundaryPoint, FixedSet};
use super::clopen::{cover_check, ClopenSet, CoverResult};
use super::word::{ball, Letter, ReducedWord};
use super::TreeError;

/// Largest power of the hyperbolic element tried by [`recipe_witness`].
pub const MAX_RECIPE_POWER: u32 = 64;

/// Translates `g_2..g_n` with `U = U_1 ∩ g_2U_2 ∩ … ∩ g_nU_n` nonempty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommonSet {
    pub translates: Vec<ReducedWord>,
    pub set: ClopenSet,
}

/// Greedy search, set by set: each `g_j` is the shortlex-first word of
/// length at most `max_len` keeping the running intersection nonempty.
pub fn reduce_to_common_set(sets: &[ClopenSet], max_len: usize) -> Result<CommonSet, TreeError> {
    let Some(first) = sets.first() else {
        return Err(TreeError::EmptySet);
    };
    check_sets(sets)?;
    let candidates = ball(first.rank(), max_len);
    let mut running = first.clone();
    let mut translates = Vec::with_capacity(sets.len() - 1);
    for u in &sets[1..] {
        let (g, next) = candidates
            .iter()
            .find_map(|g| {
                let next = running.intersection(&u.act(g)).expect("ranks checked");
                (!next.is_empty()).then(|| (g.clone(), next))
            })
            .ok_or(TreeError::NotFound { radius: max_len })?;
        translates.push(g);
        running = next;
    }
    Ok(CommonSet { translates, set: running })
}

fn check_sets(sets: &[ClopenSet]) -> Result<(), TreeError> {
    let rank = sets[0].rank();
    if let Some(bad) = sets.iter().find(|s| s.rank() != rank) {
        return Err(TreeError::RankMismatch(rank, bad.rank()));
    }
    if sets.iter().any(ClopenSet::is_empty) {
        return Err(TreeError::EmptySet);
    }
    Ok(())
}

/// Words `h_1..h_m` of length at most `max_len` with `h_1V ∪ … ∪ h_mV` the
/// whole boundary, sorted shortlex.
///
/// For growing radius `r` the translates of `V` by the ball of radius `r`
/// are added greedily by largest measure gain (shortlex first on ties) until
/// they cover or stall; redundant translates are then dropped. The result is
/// certified by [`cover_check`] but `m` is not claimed minimal.
pub fn translate_cover(v: &ClopenSet, max_len: usize) -> Result<Vec<ReducedWord>, TreeError> {
    if v.is_empty() {
        return Err(TreeError::EmptySet);
    }
    for r in 0..=max_len {
        if let Some(mut chosen) = greedy_cover(v, r) {
            let mut i = 0;
            while i < chosen.len() {
                let rest: Vec<ClopenSet> =
                    chosen.iter().enumerate().filter(|&(l, _)| l != i).map(|(_, h)| v.act(h)).collect();
                if !rest.is_empty() && cover_check(&rest)?.covered {
                    chosen.remove(i);
                } else {
                    i += 1;
                }
            }
            chosen.sort();
            return Ok(chosen);
        }
    }
    Err(TreeError::NotFound { radius: max_len })
}

fn greedy_cover(v: &ClopenSet, radius: usize) -> Option<Vec<ReducedWord>> {
    let images: Vec<(ReducedWord, ClopenSet)> = ball(v.rank(), radius)
        .into_iter()
        .map(|h| {
            let image = v.act(&h);
            (h, image)
        })
        .collect();
    let mut union = ClopenSet::empty(v.rank());
    let mut chosen = Vec::new();
    while !union.is_full() {
        let current = union.measure();
        let mut best: Option<(usize, ClopenSet)> = None;
        for (i, (_, image)) in images.iter().enumerate() {
            let candidate = union.union(image).expect("same rank");
            if candidate.is_full() {
                best = Some((i, candidate));
                break;
            }
            if best.as_ref().map_or(candidate.measure() > current, |(_, b)| candidate.measure() > b.measure()) {
                best = Some((i, candidate));
            }
        }
        let (i, next) = best?;
        chosen.push(images[i].0.clone());
        union = next;
    }
    Some(chosen)
}

/// One index of the constructive recipe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecipeStep {
    /// Cover translate `h_j`.
    pub h: ReducedWord,
    /// Steering word with `h_j x ∈ s_j U_j`.
    pub s: ReducedWord,
    /// Least `N_j` with `g^{N_j} V_x ⊂ h_j⁻¹ s_j U_j`.
    pub power: u32,
    /// `t_j = h_j g^{-N_j} h_j⁻¹ s_j`.
    pub t: ReducedWord,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecipeWitness {
    pub g: ReducedWord,
    pub attracting: BoundaryPoint,
    /// `V_x`: the complement of a cylinder around the repelling end.
    pub neighbourhood: ClopenSet,
    /// The translates `h_1..h_m` covering with `V_x`.
    pub cover: Vec<ReducedWord>,
    pub steps: Vec<RecipeStep>,
    pub check: CoverResult,
}

impl RecipeWitness {
    pub fn translates(&self) -> Vec<ReducedWord> {
        self.steps.iter().map(|s| s.t.clone()).collect()
    }
}

/// Translates `t_j` with `t_1U_1 ∪ … ∪ t_nU_n` the whole boundary, built from
/// the attracting end `x` of the hyperbolic element `g`.
///
/// `V_x` is the complement of the cylinder of length `|g|` around the
/// repelling end, so `g^N V_x` shrinks to `x`. With the cover `h_1..h_m` of
/// [`translate_cover`] (needing `m ≤ n`, later `h_j = e`), each `s_j` is the
/// shortlex-first word of length at most `max_len` with `s_j⁻¹ h_j x ∈ U_j`
/// and `N_j` the least power with `g^{N_j} V_x ⊂ h_j⁻¹ s_j U_j`, both decided
/// exactly. Then `h_j V_x ⊂ t_j U_j`, and the cover is rechecked.
pub fn recipe_witness(sets: &[ClopenSet], g: &ReducedWord, max_len: usize) -> Result<RecipeWitness, TreeError> {
    if sets.is_empty() {
        return Err(TreeError::EmptySet);
    }
    check_sets(sets)?;
    let rank = sets[0].rank();
    let FixedSet::Pair { attracting, repelling } = fixed_endpoints(g) else {
        return Err(TreeError::Identity);
    };
    let attracting_check = attracting_endpoint(g)?;
    debug_assert_eq!(attracting_check, attracting);
    let neighbourhood = ClopenSet::cylinder(rank, repelling.prefix(g.len())).complement();
    let cover = translate_cover(&neighbourhood, max_len)?;
    if cover.len() > sets.len() {
        return Err(TreeError::CoverTooLarge { m: cover.len(), n: sets.len() });
    }
    let steering = ball(rank, max_len);
    let mut steps = Vec::with_capacity(sets.len());
    for (j, u) in sets.iter().enumerate() {
        let h = cover.get(j).cloned().unwrap_or_else(ReducedWord::identity);
        let hx = attracting.act(&h);
        let s = steering
            .iter()
            .find(|s| u.contains_point(&hx.act(&s.inverse())))
            .cloned()
            .ok_or(TreeError::NotFound { radius: max_len })?;
        let target = u.act(&h.inverse().mul(&s));
        let mut image = neighbourhood.clone();
        let mut power = 0;
        while !image.is_subset(&target)? {
            if power == MAX_RECIPE_POWER {
                return Err(TreeError::ContractionExhausted { index: j, max_power: MAX_RECIPE_POWER });
            }
            image = image.act(g);
            power += 1;
        }
        let t = h.mul(&g.inverse().pow(power)).mul(&h.inverse()).mul(&s);
        steps.push(RecipeStep { h, s, power, t });
    }
    let images: Vec<ClopenSet> = sets.iter().zip(&steps).map(|(u, st)| u.act(&st.t)).collect();
    let check = cover_check(&images)?;
    if !check.covered {
        return Err(TreeError::Invariant("recipe translates failed the cover check"));
    }
    Ok(RecipeWitness { g: g.clone(), attracting, neighbourhood, cover, steps, check })
}

/// How a two-filling witness was obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Strategy {
    /// One of the sets is the whole boundary.
    Trivial,
    Recipe(RecipeWitness),
    /// Shortlex search over pairs with `|t_1| + |t_2| ≤ max_len`.
    Search,
}

impl Strategy {
    pub fn name(&self) -> &'static str {
        match self {
            Strategy::Trivial => "trivial",
            Strategy::Recipe(_) => "recipe",
            Strategy::Search => "search",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoFillingWitness {
    pub t1: ReducedWord,
    pub t2: ReducedWord,
    pub strategy: Strategy,
    pub check: CoverResult,
}

/// `t_1, t_2` with `t_1U ∪ t_2V` the whole boundary, certified by
/// [`cover_check`]. Tries [`recipe_witness`] with `g = x` first and falls
/// back to a bounded pair search.
pub fn two_filling_witness(u: &ClopenSet, v: &ClopenSet, max_len: usize) -> Result<TwoFillingWitness, TreeError> {
    check_sets(&[u.clone(), v.clone()])?;
    let e = ReducedWord::identity();
    if u.is_full() || v.is_full() {
        let check = cover_check(&[u.clone(), v.clone()])?;
        return Ok(TwoFillingWitness { t1: e.clone(), t2: e, strategy: Strategy::Trivial, check });
    }
    let g = ReducedWord::letter(Letter::new(0, false));
    if let Ok(w) = recipe_witness(&[u.clone(), v.clone()], &g, max_len) {
        return Ok(TwoFillingWitness {
            t1: w.steps[0].t.clone(),
            t2: w.steps[1].t.clone(),
            check: w.check.clone(),
            strategy: Strategy::Recipe(w),
        });
    }
    let words = ball(u.rank(), max_len);
    for total in 0..=max_len {
        for t1 in words.iter().take_while(|w| w.len() <= total) {
            let left = u.act(t1);
            for t2 in words.iter().filter(|w| w.len() == total - t1.len()) {
                let check = cover_check(&[left.clone(), v.act(t2)])?;
                if check.covered {
                    return Ok(TwoFillingWitness { t1: t1.clone(), t2: t2.clone(), strategy: Strategy::Search, check });
                }
            }
        }
    }
    Err(TreeError::NotFound { radius: max_len })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn w(s: &str) -> ReducedWord {
        s.parse().unwrap()
    }

    fn set(s: &str) -> ClopenSet {
        ClopenSet::parse(2, s).unwrap()
    }

    fn covers(sets: &[ClopenSet], ts: &[ReducedWord]) -> bool {
        let images: Vec<ClopenSet> = sets.iter().zip(ts).map(|(s, t)| s.act(t)).collect();
        cover_check(&images).unwrap().covered
    }

    #[test]
    fn common_set_examples() {
        let full = ClopenSet::full(2);
        let c = reduce_to_common_set(&[full.clone(), full.clone(), full], 3).unwrap();
        assert_eq!(c.translates, alloc::vec![ReducedWord::identity(); 2]);
        assert!(c.set.is_full());

        let c = reduce_to_common_set(&[set("x"), set("y")], 3).unwrap();
        assert!(!c.set.is_empty());
        assert_eq!(c.set, set("x").intersection(&set("y").act(&c.translates[0])).unwrap());

        assert_eq!(reduce_to_common_set(&[set("x"), set("y")], 0), Err(TreeError::NotFound { radius: 0 }));
    }

    #[test]
    fn translate_cover_examples() {
        assert_eq!(translate_cover(&ClopenSet::full(2), 3).unwrap(), alloc::vec![ReducedWord::identity()]);
        let hs = translate_cover(&set("x"), 4).unwrap();
        assert!((2..=3).contains(&hs.len()));
        assert!(covers(&alloc::vec![set("x"); hs.len()], &hs));
        assert_eq!(translate_cover(&set("xy"), 0), Err(TreeError::NotFound { radius: 0 }));
    }

    #[test]
    fn neighbourhood_of_x_needs_two() {
        let v = set("X").complement();
        let hs = translate_cover(&v, 4).unwrap();
        assert_eq!(hs.len(), 2);
        assert!(covers(&[v.clone(), v], &hs));
    }

    #[test]
    fn two_filling_examples() {
        let t = two_filling_witness(&set("x"), &set("y"), 8).unwrap();
        assert!(t.check.covered);
        assert!(covers(&[set("x"), set("y")], &[t.t1.clone(), t.t2.clone()]));
        assert_eq!(t.strategy.name(), "recipe");
        assert!(covers(&[set("x"), set("y")], &[w("X"), w("Y")]));

        let t = two_filling_witness(&ClopenSet::full(2), &set("xy"), 8).unwrap();
        assert_eq!((t.t1, t.t2, t.strategy), (ReducedWord::identity(), ReducedWord::identity(), Strategy::Trivial));

        let t = two_filling_witness(&set("x"), &set("x"), 8).unwrap();
        assert!(covers(&[set("x"), set("x")], &[t.t1, t.t2]));

        assert_eq!(two_filling_witness(&set("x"), &ClopenSet::empty(2), 8), Err(TreeError::EmptySet));
    }

    #[test]
    fn recipe_steps_satisfy_their_inclusions() {
        let sets = [set("xY,Yx"), set("yyX")];
        let r = recipe_witness(&sets, &w("x"), 8).unwrap();
        for (u, st) in sets.iter().zip(&r.steps) {
            let hv = r.neighbourhood.act(&st.h);
            assert!(hv.is_subset(&u.act(&st.t)).unwrap());
            assert!(u.contains_point(&r.attracting.act(&st.h).act(&st.s.inverse())));
        }
    }

    #[test]
    fn recipe_with_conjugate_generator() {
        let sets = [set("yx"), set("XY"), set("Yy")];
        let r = recipe_witness(&sets, &w("yxY"), 8).unwrap();
        assert!(covers(&sets, &r.translates()));
    }

    #[test]
    fn random_pairs_are_two_filling() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut done = 0;
        while done < 10 {
            let u = ClopenSet::random(2, 3, &mut rng);
            let v = ClopenSet::random(2, 3, &mut rng);
            if u.is_empty() || v.is_empty() || u.is_full() || v.is_full() {
                continue;
            }
            let t = two_filling_witness(&u, &v, 8).unwrap();
            assert_eq!(t.strategy.name(), "recipe");
            assert!(covers(&[u, v], &[t.t1, t.t2]));
            done += 1;
        }
    }

    #[test]
    fn rank_three_pair() {
        let u = ClopenSet::parse(3, "x").unwrap();
        let v = ClopenSet::parse(3, "y").unwrap();
        let t = two_filling_witness(&u, &v, 2).unwrap();
        assert!(covers(&[u, v], &[t.t1, t.t2]));
    }
}
