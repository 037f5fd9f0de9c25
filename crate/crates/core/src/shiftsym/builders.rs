use super::complex::{cone, dual_shifted, is_acyclic, is_chain_map, ChainMap, PtComplex};
use crate::eqforms::{build_adjoint_structure, AdjointStructure, GSpace};
use crate::exactalg::{solve_t, ExactError, Field, Mat, Rat, Rationals};
use crate::liecore::{conjugation_field, InvariantPairing, MatrixGroup};
use num::Zero;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Shifted 2-form at a point: graded pairing blocks assembling the chain
/// map candidate 𝕋 → 𝕃[n]. `blocks[k]` pairs degree k against degree
/// −n−k (rows indexed by V_k, columns by V_{−n−k}).
#[derive(Debug, Clone)]
pub struct ShiftedTwoForm<T> {
    pub shift: i64,
    pub blocks: BTreeMap<i32, Mat<T>>,
}

impl<T: Clone + PartialEq + std::fmt::Debug> ShiftedTwoForm<T> {
    pub fn pair_block(&self, deg: i32) -> Option<&Mat<T>> {
        self.blocks.get(&deg)
    }
}

/// Graded antisymmetry: ω(a, b) = −(−1)^{|a||b|} ω(b, a) on basis vectors.
pub fn graded_antisymmetric<F: Field>(
    f: &F,
    form: &ShiftedTwoForm<F::El>,
) -> bool {
    for (&k, m) in &form.blocks {
        let other_deg = -(form.shift as i32) - k;
        let Some(other) = form.blocks.get(&other_deg) else {
            if m.data.iter().any(|x| !f.is_zero(x)) {
                return false;
            }
            continue;
        };
        let sign_flip = (k * other_deg).rem_euclid(2) == 0;
        for i in 0..m.rows {
            for j in 0..m.cols {
                let a = m.at(i, j);
                let b = other.at(j, i);
                let expect = if sign_flip { f.neg(b) } else { b.clone() };
                if *a != expect {
                    return false;
                }
            }
        }
    }
    true
}

/// The chain map 𝕋 → 𝕃[n] induced by the pairing blocks.
pub fn induced_chain_map<F: Field>(
    _f: &F,
    t: &PtComplex<F::El>,
    form: &ShiftedTwoForm<F::El>,
) -> ChainMap<F::El> {
    // Φ_k: V_k → (V_{−n−k})* has matrix blocks[k]ᵀ? rows of the target are
    // indexed by the dual basis of V_{−n−k}: (Φ_k a)(b) = ω(a, b), so the
    // matrix in those bases is blocks[k] transposed from (a-rows, b-cols)
    // to (b-rows, a-cols).
    let mut out = BTreeMap::new();
    for (&k, m) in &form.blocks {
        if t.dim(k) == 0 {
            continue;
        }
        out.insert(k, m.transpose());
    }
    ChainMap { blocks: out }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct NondegeneracyVerdict {
    pub chain_map_ok: bool,
    pub graded_antisymmetric: bool,
    pub cone_acyclic: bool,
}

impl NondegeneracyVerdict {
    pub fn nondegenerate(&self) -> bool {
        self.chain_map_ok && self.graded_antisymmetric && self.cone_acyclic
    }
}

/// Nondegeneracy of a shifted 2-form on a tangent complex: the cone of
/// 𝕋 → 𝕃[n] must be exact, decided degreewise by exact ranks.
pub fn nondegenerate<F: Field>(
    f: &F,
    form: &ShiftedTwoForm<F::El>,
    t: &PtComplex<F::El>,
) -> Result<bool, ExactError> {
    let v = nondegeneracy_verdict(f, form, t);
    if !v.chain_map_ok {
        return Err(ExactError::UnsupportedScalar(
            "shifted 2-form does not induce a chain map on this complex",
        ));
    }
    Ok(v.nondegenerate())
}

pub fn nondegeneracy_verdict<F: Field>(
    f: &F,
    form: &ShiftedTwoForm<F::El>,
    t: &PtComplex<F::El>,
) -> NondegeneracyVerdict {
    let l_shift = dual_shifted(f, t, form.shift);
    let phi = induced_chain_map(f, t, form);
    let chain_map_ok = is_chain_map(f, t, &l_shift, &phi);
    let anti = graded_antisymmetric(f, form);
    let cone_acyclic = if chain_map_ok {
        is_acyclic(f, &cone(f, t, &l_shift, &phi))
    } else {
        false
    };
    NondegeneracyVerdict { chain_map_ok, graded_antisymmetric: anti, cone_acyclic }
}

/// BG at its basepoint: 𝕋 = 𝔤[1]; the 2-form with the given shift pairs
/// 𝔤 against V_{−n+1}, so only n = 2 can be nondegenerate.
pub fn build_bg(
    group: &Arc<MatrixGroup>,
    pairing: &InvariantPairing,
    shift: i64,
) -> (PtComplex<Rat>, ShiftedTwoForm<Rat>) {
    let t = PtComplex::new(-1, vec![group.dim()], vec![]);
    let mut blocks = BTreeMap::new();
    if shift == 2 {
        blocks.insert(-1, pairing.gram.clone());
    } else {
        // pairing block against a zero space
        blocks.insert(-1, Mat { rows: group.dim(), cols: 0, data: vec![] });
    }
    (t, ShiftedTwoForm { shift, blocks })
}

/// [𝔤*/G] at the point φ: 𝕋 = (𝔤 →^{x ↦ x·φ} 𝔤*) in degrees −1, 0 with
/// the canonical-element pairing; 1-shifted.
pub fn build_coadjoint_at(
    group: &Arc<MatrixGroup>,
    phi: &[Rat],
) -> (PtComplex<Rat>, ShiftedTwoForm<Rat>) {
    let d = group.dim();
    assert_eq!(phi.len(), d);
    let lie = &group.lie;
    // (x·φ)(y) = −φ([x, y]); matrix column j = coordinates of b_j·φ in the
    // dual basis (row i = value on b_i)
    let diff = Mat::from_fn(d, d, |i, j| {
        let br = lie.bracket(
            &crate::liecore::basis_coord_vec(d, j),
            &crate::liecore::basis_coord_vec(d, i),
        );
        let mut acc = Rat::zero();
        for (k, c) in br.iter().enumerate() {
            if !c.is_zero() {
                acc += c * &phi[k];
            }
        }
        -acc
    });
    let t = PtComplex::new(-1, vec![d, d], vec![diff]);
    // ω(x, ψ) = ψ(x): identity block in degree −1; degree-0 block is the
    // graded partner −(identity)ᵀ… with |a||b| = 0: ω(ψ, x) = −ω(x, ψ)
    let mut blocks = BTreeMap::new();
    blocks.insert(-1, crate::exactalg::mat_identity(&Rationals, d));
    blocks.insert(0, crate::exactalg::mat_scale(&Rationals, &crate::exactalg::rat_int(-1), &crate::exactalg::mat_identity(&Rationals, d)));
    (t, ShiftedTwoForm { shift: 1, blocks })
}

/// [G/Gᵃᵈ] at the point g: 𝕋 = (𝔤 →^{v_·(g)} T_gG) with the β-pairing;
/// 1-shifted. Returns the complex, the form, and the tangent basis used
/// to coordinatize T_gG.
pub fn build_adjoint_at(
    group: &Arc<MatrixGroup>,
    pairing: &InvariantPairing,
    space: &GSpace,
    g: &Mat<Rat>,
) -> Result<(PtComplex<Rat>, ShiftedTwoForm<Rat>, Vec<Vec<Rat>>), ExactError> {
    let q = Rationals;
    let d = group.dim();
    let tb = space.tangent_basis_at(&q, &g.data);
    let tdim = tb.len();
    let tb_mat = if tdim == 0 {
        Mat { rows: g.data.len(), cols: 0, data: vec![] }
    } else {
        Mat::from_fn(g.data.len(), tdim, |i, j| tb[j][i].clone())
    };
    // differential: x ↦ v_x(g) in tangent coordinates
    let mut cols = Vec::with_capacity(d);
    for k in 0..d {
        let bk = &group.basis_mats[k];
        let v = conjugation_field(&q, bk, g);
        let coords = solve_t(&q, &tb_mat, &v.data)
            .ok_or(ExactError::UnsupportedScalar("action field not tangent"))?;
        cols.push(coords);
    }
    let diff = Mat::from_fn(tdim, d, |i, j| cols[j][i].clone());
    let t = PtComplex::new(-1, vec![d, tdim], vec![diff]);
    // ω(x, v) = ⟨β_g(v), x⟩
    let gi = group.invert_point(&q, g);
    let half = crate::exactalg::rat(1, 2);
    let mut beta_coords = Vec::with_capacity(tdim);
    for v in &tb {
        let vm = Mat { rows: group.n, cols: group.n, data: v.clone() };
        let theta = crate::exactalg::mat_mul(&q, &gi, &vm);
        let theta_bar = crate::exactalg::mat_mul(&q, &vm, &gi);
        let beta = crate::exactalg::mat_scale(
            &q,
            &half,
            &crate::exactalg::mat_add(&q, &theta, &theta_bar),
        );
        let coords = group
            .matrix_to_lie(&q, &beta)
            .ok_or(ExactError::UnsupportedScalar("β not Lie-valued"))?;
        beta_coords.push(coords);
    }
    let block_m1 = Mat::from_fn(d, tdim, |i, j| {
        // ⟨β(t_j), b_i⟩
        let mut acc = Rat::zero();
        for k in 0..d {
            if !beta_coords[j][k].is_zero() {
                acc += &beta_coords[j][k] * pairing.gram.at(k, i);
            }
        }
        acc
    });
    let block_0 = crate::exactalg::mat_scale(&q, &crate::exactalg::rat_int(-1), &block_m1.transpose());
    let mut blocks = BTreeMap::new();
    blocks.insert(-1, block_m1);
    blocks.insert(0, block_0);
    Ok((t, ShiftedTwoForm { shift: 1, blocks }, tb))
}

/// Full adjoint builder: Cartan element via eqforms plus the pointwise
/// complexes; nondegeneracy is checked per sampled point by the caller.
pub fn build_adjoint_group(
    group: &Arc<MatrixGroup>,
    pairing: &InvariantPairing,
) -> Result<AdjointStructure, ExactError> {
    build_adjoint_structure(group, pairing)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{invert_t, mat_mul, rat_int};
    use crate::liecore::{sample_points, trace_gram};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha20Rng;

    fn sl2() -> (Arc<MatrixGroup>, InvariantPairing) {
        let g = Arc::new(MatrixGroup::sl2());
        let p = InvariantPairing::new(g.lie.clone(), trace_gram(&g));
        (g, p)
    }

    #[test]
    fn bg_nondegenerate_only_at_shift_two() {
        let (g, p) = sl2();
        let q = Rationals;
        let (t, w) = build_bg(&g, &p, 2);
        assert!(nondegenerate(&q, &w, &t).unwrap());
        let (t, w) = build_bg(&g, &p, 1);
        assert!(!nondegenerate(&q, &w, &t).unwrap());
        // rank-deficient gram
        let mut bad = p.gram.clone();
        for j in 0..3 {
            let v = bad.at(0, j).clone();
            bad.set(2, j, v.clone());
            bad.set(j, 2, v);
        }
        bad.set(2, 2, bad.at(0, 0).clone());
        let dp = InvariantPairing::new(g.lie.clone(), bad);
        let (t, w) = build_bg(&g, &dp, 2);
        assert!(!nondegenerate(&q, &w, &t).unwrap());
    }

    #[test]
    fn coadjoint_nondegenerate_at_origin_and_random_points() {
        let (g, _) = sl2();
        let q = Rationals;
        let zero = vec![Rat::zero(); 3];
        let (t, w) = build_coadjoint_at(&g, &zero);
        assert!(crate::shiftsym::validate_complex(&q, &t));
        assert!(nondegenerate(&q, &w, &t).unwrap());
        let mut rng = ChaCha20Rng::seed_from_u64(0);
        for _ in 0..10 {
            let phi: Vec<Rat> = (0..3).map(|_| rat_int(rng.gen_range(-5..=5))).collect();
            let (t, w) = build_coadjoint_at(&g, &phi);
            assert!(crate::shiftsym::validate_complex(&q, &t));
            assert!(nondegenerate(&q, &w, &t).unwrap(), "φ = {phi:?}");
        }
        // abelian rank 1: identity pairing of 𝔤 with 𝔤*
        let tor = Arc::new(MatrixGroup::torus(1));
        let (t, w) = build_coadjoint_at(&tor, &[rat_int(2)]);
        assert!(nondegenerate(&q, &w, &t).unwrap());
    }

    #[test]
    fn adjoint_nondegenerate_at_samples_and_matches_direct_rank() {
        let (g, p) = sl2();
        let q = Rationals;
        let space = GSpace::adjoint(g.clone());
        for m in sample_points(&g, &q, 10, 2).unwrap() {
            let (t, w, _tb) = build_adjoint_at(&g, &p, &space, &m).unwrap();
            let nd = nondegenerate(&q, &w, &t).unwrap();
            assert!(nd);
            // equivalent direct check: the β-pairing matrix is invertible
            let block = w.pair_block(-1).unwrap();
            assert_eq!(invert_t(&q, block).is_some(), nd);
        }
    }

    #[test]
    fn adjoint_zero_pairing_degenerate() {
        let g = Arc::new(MatrixGroup::sl2());
        let zero_gram = crate::exactalg::mat_zero(&Rationals, 3, 3);
        let p = InvariantPairing::new(g.lie.clone(), zero_gram);
        let q = Rationals;
        let space = GSpace::adjoint(g.clone());
        let m = sample_points(&g, &q, 1, 3).unwrap().remove(0);
        let (t, w, _) = build_adjoint_at(&g, &p, &space, &m).unwrap();
        assert!(!nondegenerate(&q, &w, &t).unwrap());
    }

    #[test]
    fn torus_adjoint_nondegenerate() {
        // β-pairing on GL1-like torus: ⟨g⁻¹v, x⟩ with identity gram
        let g = Arc::new(MatrixGroup::torus(1));
        let p = InvariantPairing::new(g.lie.clone(), crate::exactalg::mat_identity(&Rationals, 1));
        let q = Rationals;
        let space = GSpace::adjoint(g.clone());
        for m in sample_points(&g, &q, 5, 4).unwrap() {
            let (t, w, _) = build_adjoint_at(&g, &p, &space, &m).unwrap();
            assert!(nondegenerate(&q, &w, &t).unwrap());
        }
    }

    #[test]
    fn verdict_invariant_under_basis_change() {
        let (g, p) = sl2();
        let q = Rationals;
        let space = GSpace::adjoint(g.clone());
        let m = sample_points(&g, &q, 1, 5).unwrap().remove(0);
        let (t, w, _) = build_adjoint_at(&g, &p, &space, &m).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(10);
        for _ in 0..5 {
            // random invertible base changes P (deg −1), Q (deg 0)
            let pmat = random_invertible(&mut rng, 3);
            let qmat = random_invertible(&mut rng, 3);
            let pinv = invert_t(&q, &pmat).unwrap();
            // t' has differential Q d P⁻¹; blocks transform as
            // ω'(a, b) = ω(P⁻¹a, Q⁻¹b)
            let qinv = invert_t(&q, &qmat).unwrap();
            let d2 = mat_mul(&q, &mat_mul(&q, &qmat, t.diff(-1).unwrap()), &pinv);
            let t2 = PtComplex::new(-1, t.dims.clone(), vec![d2]);
            let b_m1 = mat_mul(
                &q,
                &mat_mul(&q, &pinv.transpose(), w.pair_block(-1).unwrap()),
                &qinv,
            );
            let b_0 = crate::exactalg::mat_scale(&q, &rat_int(-1), &b_m1.transpose());
            let w2 = ShiftedTwoForm {
                shift: 1,
                blocks: [(-1, b_m1), (0, b_0)].into_iter().collect(),
            };
            assert!(nondegenerate(&q, &w2, &t2).unwrap());
        }
    }

    fn random_invertible(rng: &mut ChaCha20Rng, n: usize) -> Mat<Rat> {
        loop {
            let m = Mat::from_fn(n, n, |_, _| rat_int(rng.gen_range(-3..=3)));
            if invert_t(&Rationals, &m).is_some() {
                return m;
            }
        }
    }
}
