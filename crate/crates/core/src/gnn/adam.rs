use ndarray::Zip;

use super::{Hyper, Parameters};

/// Adam with bias correction.
#[derive(Debug, Clone)]
pub struct Adam {
    lr: f64,
    beta1: f64,
    beta2: f64,
    eps: f64,
    step: i32,
    first: Parameters,
    second: Parameters,
}

impl Adam {
    pub fn new(params: &Parameters, hyper: &Hyper) -> Self {
        Self {
            lr: hyper.lr,
            beta1: hyper.beta1,
            beta2: hyper.beta2,
            eps: hyper.eps,
            step: 0,
            first: params.zeros_like(),
            second: params.zeros_like(),
        }
    }

    pub fn steps(&self) -> i32 {
        self.step
    }

    pub fn update(&mut self, params: &mut Parameters, grads: &Parameters) {
        self.step += 1;
        let (b1, b2, eps) = (self.beta1, self.beta2, self.eps);
        let c1 = 1.0 - b1.powi(self.step);
        let c2 = 1.0 - b2.powi(self.step);
        let lr = self.lr;
        let tensors = params
            .tensors_mut()
            .into_iter()
            .zip(grads.tensors())
            .zip(self.first.tensors_mut())
            .zip(self.second.tensors_mut());
        for ((((_, p), (_, g)), (_, m)), (_, v)) in tensors {
            Zip::from(p).and(&g).and(m).and(v).for_each(|p, &g, m, v| {
                *m = b1 * *m + (1.0 - b1) * g;
                *v = b2 * *v + (1.0 - b2) * g * g;
                *p -= lr * (*m / c1) / ((*v / c2).sqrt() + eps);
            });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gnn::ModelConfig;

    #[test]
    fn first_step_moves_by_lr() {
        let config = ModelConfig {
            input_dim: 2,
            hidden_dim: 4,
            layers: 1,
            ..ModelConfig::default()
        };
        let mut p = Parameters::zeros(&config);
        let mut g = p.zeros_like();
        g.layers[0][[0, 0]] = 3.0;
        g.layers[0][[1, 1]] = -0.01;
        let hyper = Hyper::default();
        let mut adam = Adam::new(&p, &hyper);
        adam.update(&mut p, &g);
        assert!((p.layers[0][[0, 0]] + hyper.lr).abs() < 1e-10);
        assert!((p.layers[0][[1, 1]] - hyper.lr).abs() < 1e-9);
        assert_eq!(p.layers[0][[0, 1]], 0.0);
        assert_eq!(adam.steps(), 1);
    }
}
