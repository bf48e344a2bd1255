//! Built-in test complexes and the checksummed loader for external fixture files.

use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::lens::lens_space;
use crate::simplicial::{parse_complex, product_complex_bounded, simplex_boundary, Complex, DEFAULT_SIZE_BOUND};

const RP2: &str = include_str!("../fixtures/rp2.txt");
const RP3: &str = include_str!("../fixtures/rp3.txt");
const CP2: &str = include_str!("../fixtures/cp2.txt");
const S3XS2: &str = include_str!("../fixtures/s3xs2.txt");
const LENS_5_2: &str = include_str!("../fixtures/lens_5_2.txt");

pub const WU_MANIFOLD_FILE: &str = "wu_manifold.txt";
pub const WU_MANIFOLD_SHA256: &str = "a498a233491eaf49c60f181bd03523a6b741d25c9a0ce7cd500461eea9ebd3d8";

/// The fixture directory of this crate's source tree.
pub fn default_fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn embedded(src: &str) -> Complex {
    parse_complex(src).expect("embedded fixture parses")
}

pub fn circle() -> Complex {
    sphere(1)
}

/// The n-sphere as the boundary of the (n+1)-simplex.
pub fn sphere(n: usize) -> Complex {
    simplex_boundary(n + 1)
}

/// Seven-vertex torus.
pub fn torus() -> Complex {
    let mut facets = Vec::new();
    for i in 0..7u32 {
        for (a, b) in [(1, 3), (2, 3)] {
            let mut f = vec![i, (i + a) % 7, (i + b) % 7];
            f.sort_unstable();
            facets.push(f);
        }
    }
    crate::SimplicialComplex::from_facets("torus-7", 7, facets).expect("valid torus")
}

pub fn rp2() -> Complex {
    embedded(RP2)
}

pub fn rp3() -> Complex {
    embedded(RP3)
}

pub fn cp2() -> Complex {
    embedded(CP2)
}

pub fn s3xs2() -> Complex {
    embedded(S3XS2)
}

/// Fourteen-vertex L(5, 2) from the literature, independent of the generator in [`crate::lens`].
pub fn lens_5_2() -> Complex {
    embedded(LENS_5_2)
}

/// RP³ × S², a 5-manifold whose middle integral cohomology has no torsion.
pub fn rp3_x_s2(bound: usize) -> Result<Complex> {
    product_complex_bounded(&rp3(), &sphere(2), bound)
}

/// Reads a complex file.
pub fn load(path: &Path) -> Result<Complex> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_complex(&text)
}

/// Reads a complex file after comparing its SHA-256 digest with `expected`.
pub fn load_checked(path: &Path, expected: &str) -> Result<Complex> {
    let bytes = std::fs::read(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let found = sha256_hex(&bytes);
    if found != expected {
        return Err(Error::Checksum { path: path.display().to_string(), expected: expected.into(), found });
    }
    let text = String::from_utf8(bytes).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_complex(&text)
}

/// The 15-vertex SU(3)/SO(3) from `dir`, verified against its checksum.
pub fn wu_manifold(dir: &Path) -> Result<Complex> {
    load_checked(&dir.join(WU_MANIFOLD_FILE), WU_MANIFOLD_SHA256)
}

/// Names accepted by [`named`].
pub const NAMES: &[&str] =
    &["circle", "s2", "s3", "s4", "s5", "torus", "rp2", "rp3", "cp2", "s3xs2", "rp3xs2", "lens-5-2", "wu"];

/// Looks up a fixture by name; `sN` is the N-sphere and `lens:p:q` generates L(p, q).
pub fn named(name: &str, fixtures_dir: Option<&Path>) -> Result<Complex> {
    if let Some(rest) = name.strip_prefix("lens:") {
        let parts: Vec<&str> = rest.split(':').collect();
        let parsed: Vec<u64> = parts.iter().filter_map(|s| s.parse().ok()).collect();
        if parts.len() != 2 || parsed.len() != 2 {
            return Err(Error::InvalidArgument(format!("expected lens:<p>:<q>, got {name}")));
        }
        return lens_space(parsed[0], parsed[1]);
    }
    if let Some(n) = name.strip_prefix('s').and_then(|n| n.parse::<usize>().ok()) {
        if (1..=8).contains(&n) {
            return Ok(sphere(n));
        }
    }
    Ok(match name {
        "circle" => circle(),
        "torus" => torus(),
        "rp2" => rp2(),
        "rp3" => rp3(),
        "cp2" => cp2(),
        "s3xs2" => s3xs2(),
        "rp3xs2" => rp3_x_s2(DEFAULT_SIZE_BOUND)?,
        "lens-5-2" => lens_5_2(),
        "wu" => wu_manifold(&fixtures_dir.map(Path::to_path_buf).unwrap_or_else(default_fixture_dir))?,
        _ => return Err(Error::InvalidArgument(format!("unknown fixture {name}"))),
    })
}
