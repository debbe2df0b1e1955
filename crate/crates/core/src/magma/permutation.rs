use std::fmt;

use crate::error::{Error, Result};

/// A bijection on `{0, .., n-1}`; `image[i] = f(i)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<u16>,
}

impl Permutation {
    pub fn identity(order: usize) -> Self {
        Self {
            image: (0..order as u16).collect(),
        }
    }

    pub fn from_images(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &j in &image {
            if j >= n || std::mem::replace(&mut seen[j], true) {
                return Err(Error::NotABijection);
            }
        }
        Ok(Self {
            image: image.into_iter().map(|j| j as u16).collect(),
        })
    }

    pub fn order(&self) -> usize {
        self.image.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.image[i] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.image.iter().map(|&j| j as usize)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u16; self.image.len()];
        for (i, &j) in self.image.iter().enumerate() {
            inv[j as usize] = i as u16;
        }
        Self { image: inv }
    }

    /// `self ∘ inner`, i.e. `x ↦ self(inner(x))`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        crate::magma::check_order(self.order(), inner.order())?;
        Ok(Self {
            image: inner.image.iter().map(|&x| self.image[x as usize]).collect(),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    /// 1-based cycle notation with fixed points omitted, e.g. `(1 2)(3 5 4)`.
    /// The identity renders as `()`.
    pub fn to_cycle_notation(&self) -> String {
        let n = self.order();
        let mut visited = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if visited[start] || self.apply(start) == start {
                continue;
            }
            out.push('(');
            let mut x = start;
            let mut first = true;
            while !visited[x] {
                visited[x] = true;
                if !first {
                    out.push(' ');
                }
                first = false;
                out.push_str(&(x + 1).to_string());
                x = self.apply(x);
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{}", self.to_cycle_notation())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_notation())
    }
}
