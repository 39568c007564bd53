use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use super::manifest::Manifest;
use super::npy;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::target::Dataset;

pub const X_FILE: &str = "x.npy";
pub const Y_FILE: &str = "y.npy";
pub const MANIFEST_FILE: &str = "manifest.json";

/// Writes `x.npy`, `y.npy` and `manifest.json` into `dir`, creating it if
/// needed.
pub fn write_dataset(dataset: &Dataset, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    write_npy(&dir.join(X_FILE), &dataset.x)?;
    write_npy(&dir.join(Y_FILE), &dataset.y)?;
    let manifest = Manifest::from_config(&dataset.config);
    let mut file = BufWriter::new(File::create(dir.join(MANIFEST_FILE))?);
    serde_json::to_writer_pretty(&mut file, &manifest)?;
    file.write_all(b"\n")?;
    file.flush()?;
    Ok(())
}

pub fn read_manifest(dir: &Path) -> Result<Manifest> {
    let file = File::open(dir.join(MANIFEST_FILE))?;
    let manifest: Manifest =
        serde_json::from_reader(BufReader::new(file)).map_err(|e| Error::Manifest(e.to_string()))?;
    manifest.validate()?;
    Ok(manifest)
}

pub fn read_dataset(dir: &Path) -> Result<Dataset> {
    let manifest = read_manifest(dir)?;
    let config = manifest.target_config()?;
    let x = read_npy(&dir.join(X_FILE))?;
    let y = read_npy(&dir.join(Y_FILE))?;
    let expected = (manifest.n_sequences, manifest.t_max + 1);
    for (name, m) in [(X_FILE, &x), (Y_FILE, &y)] {
        if m.shape() != expected {
            return Err(Error::Manifest(format!(
                "{name} has shape {:?}, manifest says {expected:?}",
                m.shape()
            )));
        }
    }
    Ok(Dataset { x, y, config })
}

pub fn write_npy(path: &Path, matrix: &Matrix) -> Result<()> {
    let mut file = BufWriter::new(File::create(path)?);
    npy::write_matrix(&mut file, matrix)?;
    file.flush()?;
    Ok(())
}

pub fn read_npy(path: &Path) -> Result<Matrix> {
    npy::read_matrix(&mut BufReader::new(File::open(path)?))
}
