//! Binary model checkpoints.
//!
//! Layout (all integers little-endian):
//!
//! ```text
//! magic   8 bytes  "EBCGNN\0\0"
//! version u32
//! meta    u64 length, then UTF-8 "key=value" lines (values are JSON literals)
//! count   u32 number of tensors
//! tensor  u32 name length, name, u32 rank, rank x u64 dims, f64 values
//! ```
//!
//! Metadata keys are `model.*`, `hyper.*` and `walk.*`, one per field.

use std::fs;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde_json::{Map, Value};

use super::{GnnModel, Hyper, ModelConfig, Parameters};
use crate::embed::WalkParams;
use crate::error::{Error, Result};

pub const CHECKPOINT_VERSION: u32 = 1;
const MAGIC: &[u8; 8] = b"EBCGNN\0\0";
const SECTIONS: [&str; 3] = ["model", "hyper", "walk"];

fn metadata(model: &GnnModel) -> Result<String> {
    let values = [
        serde_json::to_value(&model.config)?,
        serde_json::to_value(&model.hyper)?,
        serde_json::to_value(&model.walk)?,
    ];
    let mut out = String::new();
    for (section, value) in SECTIONS.iter().zip(values) {
        let Value::Object(fields) = value else {
            unreachable!("config structs serialize to objects")
        };
        for (k, v) in fields {
            out.push_str(&format!("{section}.{k}={v}\n"));
        }
    }
    Ok(out)
}

pub fn write_checkpoint(model: &GnnModel, mut w: impl Write) -> Result<()> {
    w.write_all(MAGIC)?;
    w.write_all(&CHECKPOINT_VERSION.to_le_bytes())?;
    let meta = metadata(model)?;
    w.write_all(&(meta.len() as u64).to_le_bytes())?;
    w.write_all(meta.as_bytes())?;
    let tensors = model.params.tensors();
    w.write_all(&(tensors.len() as u32).to_le_bytes())?;
    for (name, t) in tensors {
        w.write_all(&(name.len() as u32).to_le_bytes())?;
        w.write_all(name.as_bytes())?;
        w.write_all(&(t.ndim() as u32).to_le_bytes())?;
        for &d in t.shape() {
            w.write_all(&(d as u64).to_le_bytes())?;
        }
        for v in t.iter() {
            w.write_all(&v.to_le_bytes())?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn save_checkpoint(model: &GnnModel, path: impl AsRef<Path>) -> Result<()> {
    write_checkpoint(model, BufWriter::new(fs::File::create(path)?))
}

fn read_u32(r: &mut impl Read) -> Result<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b)?;
    Ok(u32::from_le_bytes(b))
}

fn read_u64(r: &mut impl Read) -> Result<u64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(u64::from_le_bytes(b))
}

fn read_string(r: &mut impl Read, len: usize) -> Result<String> {
    let mut b = vec![0u8; len];
    r.read_exact(&mut b)?;
    String::from_utf8(b).map_err(|e| Error::Checkpoint(format!("invalid UTF-8: {e}")))
}

pub fn read_checkpoint(mut r: impl Read) -> Result<GnnModel> {
    let mut magic = [0u8; 8];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(Error::Checkpoint("not a model checkpoint (bad magic)".into()));
    }
    let version = read_u32(&mut r)?;
    if version != CHECKPOINT_VERSION {
        return Err(Error::Checkpoint(format!("unsupported version {version}")));
    }
    let meta_len = read_u64(&mut r)? as usize;
    let meta = read_string(&mut r, meta_len)?;

    let mut sections: [Map<String, Value>; 3] = Default::default();
    for line in meta.lines().filter(|l| !l.is_empty()) {
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Checkpoint(format!("bad metadata line '{line}'")))?;
        let (section, field) = key
            .split_once('.')
            .ok_or_else(|| Error::Checkpoint(format!("bad metadata key '{key}'")))?;
        let idx = SECTIONS
            .iter()
            .position(|s| *s == section)
            .ok_or_else(|| Error::Checkpoint(format!("unknown metadata section '{section}'")))?;
        sections[idx].insert(field.to_string(), serde_json::from_str(value)?);
    }
    let [model, hyper, walk] = sections;
    let config: ModelConfig = serde_json::from_value(Value::Object(model))?;
    let hyper: Hyper = serde_json::from_value(Value::Object(hyper))?;
    let walk: WalkParams = serde_json::from_value(Value::Object(walk))?;
    config.validate()?;

    let mut params = Parameters::zeros(&config);
    let count = read_u32(&mut r)? as usize;
    let mut expected = params.tensors_mut();
    if count != expected.len() {
        return Err(Error::Checkpoint(format!(
            "expected {} tensors, file has {count}",
            expected.len()
        )));
    }
    for (want_name, target) in expected.iter_mut() {
        let len = read_u32(&mut r)? as usize;
        let name = read_string(&mut r, len)?;
        if &name != want_name {
            return Err(Error::Checkpoint(format!("expected tensor '{want_name}', found '{name}'")));
        }
        let rank = read_u32(&mut r)? as usize;
        let mut dims = Vec::with_capacity(rank);
        for _ in 0..rank {
            dims.push(read_u64(&mut r)? as usize);
        }
        if dims != target.shape() {
            return Err(Error::Checkpoint(format!(
                "tensor '{name}' has shape {dims:?}, config implies {:?}",
                target.shape()
            )));
        }
        for v in target.iter_mut() {
            let mut b = [0u8; 8];
            r.read_exact(&mut b)?;
            *v = f64::from_le_bytes(b);
        }
    }
    drop(expected);
    if !params.is_finite() {
        return Err(Error::Checkpoint("parameters contain non-finite values".into()));
    }
    Ok(GnnModel {
        config,
        hyper,
        walk,
        params,
    })
}

pub fn load_checkpoint(path: impl AsRef<Path>) -> Result<GnnModel> {
    read_checkpoint(BufReader::new(fs::File::open(path)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gnn::{AdjacencyVariant, ModelConfig};

    fn model() -> GnnModel {
        let config = ModelConfig {
            input_dim: 6,
            hidden_dim: 8,
            layers: 3,
            capacity: 50,
            variant: AdjacencyVariant::WeightOnly,
        };
        let walk = WalkParams {
            dim: 6,
            q: 0.5,
            seed: 77,
            ..WalkParams::default()
        };
        let hyper = Hyper {
            epochs: 7,
            ..Hyper::default()
        };
        GnnModel::new(config, hyper, walk, 11).unwrap()
    }

    #[test]
    fn round_trip_is_exact() {
        let m = model();
        let mut buf = Vec::new();
        write_checkpoint(&m, &mut buf).unwrap();
        assert_eq!(&buf[..8], MAGIC);
        let back = read_checkpoint(buf.as_slice()).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn corruption_is_detected() {
        let m = model();
        let mut buf = Vec::new();
        write_checkpoint(&m, &mut buf).unwrap();

        let mut bad = buf.clone();
        bad[0] = b'X';
        assert!(matches!(read_checkpoint(bad.as_slice()), Err(Error::Checkpoint(_))));

        let mut bad = buf.clone();
        bad[8] = 9;
        assert!(matches!(read_checkpoint(bad.as_slice()), Err(Error::Checkpoint(_))));

        assert!(read_checkpoint(&buf[..buf.len() - 3]).is_err());
    }
}
