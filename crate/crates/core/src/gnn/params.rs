use ndarray::{Array1, Array2, ArrayViewD, ArrayViewMutD};
use rand::Rng;

use super::ModelConfig;
use crate::error::Result;
use crate::seed;

/// Score head of one layer: two tanh stages and a linear output.
#[derive(Debug, Clone, PartialEq)]
pub struct Head {
    pub fc1: Array2<f64>,
    pub bias1: Array1<f64>,
    pub fc2: Array2<f64>,
    pub bias2: Array1<f64>,
    pub fc3: Array2<f64>,
    pub bias3: Array1<f64>,
}

/// Layer weights and per-layer heads, shared by both branches.
#[derive(Debug, Clone, PartialEq)]
pub struct Parameters {
    pub layers: Vec<Array2<f64>>,
    pub heads: Vec<Head>,
}

impl Parameters {
    pub fn zeros(config: &ModelConfig) -> Self {
        let (h, h2, h4) = config.head_widths();
        let layers = (0..config.layers)
            .map(|k| {
                let fan_in = if k == 0 { config.input_dim } else { h };
                Array2::zeros((fan_in, h))
            })
            .collect();
        let heads = (0..config.layers)
            .map(|_| Head {
                fc1: Array2::zeros((h, h2)),
                bias1: Array1::zeros(h2),
                fc2: Array2::zeros((h2, h4)),
                bias2: Array1::zeros(h4),
                fc3: Array2::zeros((h4, 1)),
                bias3: Array1::zeros(1),
            })
            .collect();
        Self { layers, heads }
    }

    pub fn zeros_like(&self) -> Self {
        let mut out = self.clone();
        for (_, mut t) in out.tensors_mut() {
            t.fill(0.0);
        }
        out
    }

    /// Every tensor with a stable name, in a fixed order.
    pub fn tensors(&self) -> Vec<(String, ArrayViewD<'_, f64>)> {
        let mut out = Vec::new();
        for (k, w) in self.layers.iter().enumerate() {
            out.push((format!("layer{k}.weight"), w.view().into_dyn()));
        }
        for (k, h) in self.heads.iter().enumerate() {
            out.push((format!("head{k}.fc1"), h.fc1.view().into_dyn()));
            out.push((format!("head{k}.bias1"), h.bias1.view().into_dyn()));
            out.push((format!("head{k}.fc2"), h.fc2.view().into_dyn()));
            out.push((format!("head{k}.bias2"), h.bias2.view().into_dyn()));
            out.push((format!("head{k}.fc3"), h.fc3.view().into_dyn()));
            out.push((format!("head{k}.bias3"), h.bias3.view().into_dyn()));
        }
        out
    }

    pub fn tensors_mut(&mut self) -> Vec<(String, ArrayViewMutD<'_, f64>)> {
        let mut out = Vec::new();
        for (k, w) in self.layers.iter_mut().enumerate() {
            out.push((format!("layer{k}.weight"), w.view_mut().into_dyn()));
        }
        for (k, h) in self.heads.iter_mut().enumerate() {
            out.push((format!("head{k}.fc1"), h.fc1.view_mut().into_dyn()));
            out.push((format!("head{k}.bias1"), h.bias1.view_mut().into_dyn()));
            out.push((format!("head{k}.fc2"), h.fc2.view_mut().into_dyn()));
            out.push((format!("head{k}.bias2"), h.bias2.view_mut().into_dyn()));
            out.push((format!("head{k}.fc3"), h.fc3.view_mut().into_dyn()));
            out.push((format!("head{k}.bias3"), h.bias3.view_mut().into_dyn()));
        }
        out
    }

    pub fn scalar_count(&self) -> usize {
        self.tensors().iter().map(|(_, t)| t.len()).sum()
    }

    pub fn is_finite(&self) -> bool {
        self.tensors().iter().all(|(_, t)| t.iter().all(|v| v.is_finite()))
    }
}

fn xavier<R: Rng>(fan_in: usize, fan_out: usize, rng: &mut R) -> Array2<f64> {
    let bound = (6.0 / (fan_in + fan_out) as f64).sqrt();
    Array2::from_shape_simple_fn((fan_in, fan_out), || rng.random_range(-bound..=bound))
}

/// Xavier-uniform weights and zero biases.
pub fn xavier_init(config: &ModelConfig, seed: u64) -> Result<Parameters> {
    config.validate()?;
    let mut rng = seed::rng(seed, "xavier", 0);
    let mut params = Parameters::zeros(config);
    for w in &mut params.layers {
        *w = xavier(w.nrows(), w.ncols(), &mut rng);
    }
    for h in &mut params.heads {
        h.fc1 = xavier(h.fc1.nrows(), h.fc1.ncols(), &mut rng);
        h.fc2 = xavier(h.fc2.nrows(), h.fc2.ncols(), &mut rng);
        h.fc3 = xavier(h.fc3.nrows(), h.fc3.ncols(), &mut rng);
    }
    Ok(params)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(input: usize, hidden: usize) -> ModelConfig {
        ModelConfig {
            input_dim: input,
            hidden_dim: hidden,
            layers: 2,
            ..ModelConfig::default()
        }
    }

    #[test]
    fn bounds_and_biases() {
        let p = xavier_init(&config(4, 8), 3).unwrap();
        let b = (6.0f64 / 12.0).sqrt();
        assert!(p.layers[0].iter().all(|v| v.abs() <= b));
        assert!(p.heads.iter().all(|h| h.bias1.iter().all(|&v| v == 0.0)));
        assert_eq!(p.heads[0].fc3.dim(), (2, 1));

        let mut rng = seed::rng(0, "t", 0);
        assert!(xavier(3, 3, &mut rng).iter().all(|v| v.abs() <= 1.0));
    }

    #[test]
    fn same_seed_same_parameters() {
        let c = config(6, 8);
        assert_eq!(xavier_init(&c, 9).unwrap(), xavier_init(&c, 9).unwrap());
        assert_ne!(xavier_init(&c, 9).unwrap(), xavier_init(&c, 10).unwrap());
    }

    #[test]
    fn tensor_listing_is_consistent() {
        let mut p = xavier_init(&config(6, 8), 1).unwrap();
        let names: Vec<String> = p.tensors().into_iter().map(|t| t.0).collect();
        let names_mut: Vec<String> = p.tensors_mut().into_iter().map(|t| t.0).collect();
        assert_eq!(names, names_mut);
        assert_eq!(names.len(), 2 + 2 * 6);
        // 6*8 + 8*8 + 2 * (8*4 + 4 + 4*2 + 2 + 2 + 1)
        assert_eq!(p.scalar_count(), 48 + 64 + 2 * 49);
        let z = p.zeros_like();
        assert!(z.tensors().iter().all(|(_, t)| t.iter().all(|&v| v == 0.0)));
    }
}
