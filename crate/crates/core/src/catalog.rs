//! Specifications of the published example codes.

use crate::codespec::{CodeSpec, ConstructionKind};

fn spec_a(name: &str, ell: u32, z0: usize, z: [usize; 4]) -> CodeSpec {
    CodeSpec {
        construction: Some(ConstructionKind::A),
        name: Some(name.into()),
        ell: Some(ell),
        w: Some(3),
        u: Some(8),
        z0: Some(z0),
        z: Some(z.to_vec()),
        ..CodeSpec::default()
    }
}

fn spec_b(name: &str, ell: u32, supports: &[&[usize]]) -> CodeSpec {
    CodeSpec {
        construction: Some(ConstructionKind::B),
        name: Some(name.into()),
        ell: Some(ell),
        u: Some(supports.len()),
        v: Some(supports[0].len()),
        supports: Some(supports.iter().map(|s| s.to_vec()).collect()),
        ..CodeSpec::default()
    }
}

/// Construction A, `w = 3`, `u = 8`, `ℓ = 4`: `[[128, 32]]`.
pub fn a_128() -> CodeSpec {
    spec_a("A[[128,32]]", 4, 0, [13, 1, 10, 5])
}

/// Construction A, `w = 3`, `u = 8`, `ℓ = 5`: `[[256, 64]]`.
pub fn a_256() -> CodeSpec {
    spec_a("A[[256,64]]", 5, 0, [24, 7, 10, 15])
}

/// Construction A, `w = 3`, `u = 8`, `ℓ = 6`: `[[512, 128]]`.
pub fn a_512() -> CodeSpec {
    spec_a("A[[512,128]]", 6, 10, [20, 34, 47, 60])
}

/// Construction A, `w = 3`, `u = 8`, `ℓ = 7`: `[[1024, 256]]`.
pub fn a_1024() -> CodeSpec {
    spec_a("A[[1024,256]]", 7, 0, [127, 120, 118, 45])
}

/// Construction B, `u = 4`, `v = 3`, `ℓ = 5`: `[[128, 64]]`.
pub fn b3_128() -> CodeSpec {
    spec_b("B3[[128,64]]", 5, &[&[3, 11, 26], &[0, 16, 27], &[6, 15, 18], &[14, 20, 24]])
}

/// Construction B, `u = 4`, `v = 3`, `ℓ = 6`: `[[256, 128]]`.
pub fn b3_256() -> CodeSpec {
    spec_b("B3[[256,128]]", 6, &[&[7, 23, 52], &[1, 32, 54], &[13, 30, 40], &[10, 36, 58]])
}

/// Heuristic supports, `u = 4`, `v = 5`, `ℓ = 7`: `[[512, 256]]`, `d = 10`.
pub fn b5_heuristic() -> CodeSpec {
    spec_b(
        "B5-H[[512,256]]",
        7,
        &[
            &[4, 18, 51, 65, 93],
            &[6, 61, 78, 87, 101],
            &[19, 34, 58, 67, 83],
            &[2, 54, 86, 105, 114],
        ],
    )
}

/// Supports that are XOR translates of one another, `d = 2`.
pub fn b5_translates() -> CodeSpec {
    spec_b(
        "B5-NU[[512,256]]",
        7,
        &[
            &[3, 17, 25, 42, 56],
            &[7, 21, 29, 46, 60],
            &[12, 26, 34, 51, 65],
            &[14, 28, 36, 53, 67],
        ],
    )
}

/// Supports clustered at the top of the index range, `d = 4`.
pub fn b5_clustered() -> CodeSpec {
    spec_b(
        "B5-C[[512,256]]",
        7,
        &[
            &[96, 98, 101, 104, 107],
            &[110, 113, 116, 119, 122],
            &[97, 100, 103, 106, 109],
            &[102, 114, 117, 120, 123],
        ],
    )
}

/// Supports with heavily overlapping difference sets, `d = 4`.
pub fn b5_overlap_heavy() -> CodeSpec {
    spec_b(
        "B5-RO1[[512,256]]",
        7,
        &[
            &[2, 13, 27, 46, 59],
            &[4, 15, 29, 48, 61],
            &[6, 17, 31, 50, 63],
            &[8, 19, 33, 52, 65],
        ],
    )
}

/// Random supports with a few difference-set overlaps, `d = 8`.
pub fn b5_overlap_light() -> CodeSpec {
    spec_b(
        "B5-RO2[[512,256]]",
        7,
        &[
            &[15, 40, 74, 78, 96],
            &[20, 30, 33, 91, 99],
            &[18, 59, 69, 86, 122],
            &[2, 22, 60, 94, 105],
        ],
    )
}

/// The `v = 5` family in the order of increasing distance.
pub fn b5_family() -> Vec<CodeSpec> {
    vec![
        b5_translates(),
        b5_clustered(),
        b5_overlap_heavy(),
        b5_overlap_light(),
        b5_heuristic(),
    ]
}

/// Bicycle baseline of length 256 and row weight 8.
///
/// Its dimension matches the computed `k_q = 88` of [`a_256`] rather than the
/// nominal 64, so that both codes have the same rate.
pub fn bicycle_256(seed: u64) -> CodeSpec {
    CodeSpec {
        construction: Some(ConstructionKind::Bicycle),
        name: Some("bicycle[[256,88]]".into()),
        n: Some(256),
        row_weight: Some(8),
        target_k: Some(88),
        seed: Some(seed),
        ..CodeSpec::default()
    }
}

/// Looks a catalog entry up by its short name.
pub fn by_name(name: &str) -> Option<CodeSpec> {
    Some(match name {
        "a128" => a_128(),
        "a256" => a_256(),
        "a512" => a_512(),
        "a1024" => a_1024(),
        "b3-128" => b3_128(),
        "b3-256" => b3_256(),
        "b5-h" => b5_heuristic(),
        "b5-nu" => b5_translates(),
        "b5-c" => b5_clustered(),
        "b5-ro1" => b5_overlap_heavy(),
        "b5-ro2" => b5_overlap_light(),
        "bicycle256" => bicycle_256(0),
        _ => return None,
    })
}

/// Short names accepted by [`by_name`].
pub const NAMES: &[&str] = &[
    "a128", "a256", "a512", "a1024", "b3-128", "b3-256", "b5-h", "b5-nu", "b5-c", "b5-ro1", "b5-ro2", "bicycle256",
];
