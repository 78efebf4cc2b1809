use proptest::prelude::*;
use rand::{Rng as _, SeedableRng as _};
use rand_chacha::ChaCha8Rng;
use weather_stencils::{
    hdiff_optimized, hdiff_optimized_instrumented, hdiff_reference, hdiff_reference_instrumented,
    Grid3D, GridDims,
};

/// Scalar triple-loop evaluation of the diffusion formula, recomputing
/// each Laplacian through the flux closures. Structured differently from
/// the kernel on purpose; identical expression shapes make the values
/// bitwise comparable.
fn oracle_hdiff(input: &Grid3D<f32>, coeff: &Grid3D<f32>) -> Vec<f32> {
    let d = input.dims();
    let g = |i: usize, j: usize, k: usize| input.get(i, j, k);
    let lap = |i: usize, j: usize, k: usize| {
        4.0f32 * g(i, j, k) - (g(i - 1, j, k) + g(i + 1, j, k) + g(i, j - 1, k) + g(i, j + 1, k))
    };
    let mut out: Vec<f32> = input.data().to_vec();
    for k in 0..d.k {
        let flx = |i: usize, j: usize| {
            let f = lap(i + 1, j, k) - lap(i, j, k);
            if f * (g(i + 1, j, k) - g(i, j, k)) > 0.0 {
                0.0
            } else {
                f
            }
        };
        let fly = |i: usize, j: usize| {
            let f = lap(i, j + 1, k) - lap(i, j, k);
            if f * (g(i, j + 1, k) - g(i, j, k)) > 0.0 {
                0.0
            } else {
                f
            }
        };
        for i in d.interior_i() {
            for j in d.interior_j() {
                let divergence = ((flx(i, j) - flx(i - 1, j)) + fly(i, j)) - fly(i, j - 1);
                out[(k * d.i + i) * d.j + j] = g(i, j, k) - coeff.get(i, j, k) * divergence;
            }
        }
    }
    out
}

fn random_grid(dims: GridDims, rng: &mut ChaCha8Rng) -> Grid3D<f32> {
    Grid3D::from_fn(dims, |_, _, _| rng.gen_range(-100.0f32..100.0)).unwrap()
}

fn assert_bitwise_eq(a: &[f32], b: &[f32]) {
    assert_eq!(a.len(), b.len());
    for (idx, (x, y)) in a.iter().zip(b).enumerate() {
        assert_eq!(x.to_bits(), y.to_bits(), "value {idx} differs: {x} vs {y}");
    }
}

#[test]
fn reference_matches_scalar_oracle_bitwise() {
    let dims = GridDims::new(8, 8, 4, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let input = random_grid(dims, &mut rng);
    let coeff = random_grid(dims, &mut rng);
    let out = hdiff_reference(&input, &coeff).unwrap();
    assert_bitwise_eq(out.data(), &oracle_hdiff(&input, &coeff));
}

#[test]
fn optimized_matches_reference_for_any_worker_count() {
    let dims = GridDims::new(21, 17, 6, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let input = random_grid(dims, &mut rng);
    let coeff = random_grid(dims, &mut rng);
    let reference = hdiff_reference(&input, &coeff).unwrap();
    for workers in [1, 2, 3, 8] {
        let optimized = hdiff_optimized(&input, &coeff, workers).unwrap();
        assert_bitwise_eq(reference.data(), optimized.data());
    }
}

#[test]
fn optimized_counters_equal_reference_counters() {
    let dims = GridDims::new(12, 11, 5, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    let input = random_grid(dims, &mut rng);
    let coeff = random_grid(dims, &mut rng);
    let (_, reference) = hdiff_reference_instrumented(&input, &coeff).unwrap();
    let (_, optimized) = hdiff_optimized_instrumented(&input, &coeff, 4).unwrap();
    assert_eq!(reference, optimized);

    let points = dims.interior_point_count() as u64;
    assert_eq!(reference.flops, 46 * points);
    assert_eq!(reference.bytes_read, 140 * points);
    assert_eq!(reference.bytes_written, 4 * points);
}

#[test]
fn depth_levels_are_independent() {
    // Reversing the input levels reverses the output levels exactly.
    let dims = GridDims::new(9, 10, 5, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let input = random_grid(dims, &mut rng);
    let coeff = random_grid(dims, &mut rng);
    let out = hdiff_reference(&input, &coeff).unwrap();

    let rev_input = Grid3D::from_fn(dims, |i, j, k| input.get(i, j, dims.k - 1 - k)).unwrap();
    let rev_coeff = Grid3D::from_fn(dims, |i, j, k| coeff.get(i, j, dims.k - 1 - k)).unwrap();
    let rev_out = hdiff_reference(&rev_input, &rev_coeff).unwrap();

    for k in 0..dims.k {
        for i in 0..dims.i {
            for j in 0..dims.j {
                assert_eq!(
                    rev_out.get(i, j, k).to_bits(),
                    out.get(i, j, dims.k - 1 - k).to_bits()
                );
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn optimized_is_bitwise_equal_and_counts_match(
        i in 5usize..18,
        j in 5usize..18,
        k in 1usize..5,
        workers in 1usize..5,
        seed in any::<u64>(),
    ) {
        let dims = GridDims::new(i, j, k, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let input = random_grid(dims, &mut rng);
        let coeff = random_grid(dims, &mut rng);

        let (reference, n_ref) = hdiff_reference_instrumented(&input, &coeff).unwrap();
        let (optimized, n_opt) = hdiff_optimized_instrumented(&input, &coeff, workers).unwrap();

        prop_assert_eq!(n_ref, n_opt);
        let points = dims.interior_point_count() as u64;
        prop_assert_eq!(n_ref.flops, 46 * points);
        prop_assert_eq!(n_ref.bytes_read, 140 * points);
        prop_assert_eq!(n_ref.bytes_written, 4 * points);
        for (a, b) in reference.data().iter().zip(optimized.data()) {
            prop_assert_eq!(a.to_bits(), b.to_bits());
        }
        prop_assert_eq!(oracle_hdiff(&input, &coeff), reference.data().to_vec());
    }
}
