//! Bounded-above complexes with bounded homology, represented by a finite
//! window plus a rule for extending the resolution leftward on demand. Over
//! quotient rings such as `k[x]/(x^2)` the kernel-cover rule reproduces the
//! periodic resolutions; over Euclidean domains it terminates.

use super::Complex;
use crate::error::Result;
use crate::linalg;
use crate::module::PresentedModule;
use crate::ring::Ring;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ExtendRule {
    /// The window is the whole complex.
    None,
    /// Prepend a free cover of the kernel of the leftmost differential.
    Resolve,
}

#[derive(Clone, Debug)]
pub struct WindowedComplex {
    window: Complex,
    rule: ExtendRule,
}

impl WindowedComplex {
    pub fn perfect(window: Complex) -> WindowedComplex {
        WindowedComplex {
            window,
            rule: ExtendRule::None,
        }
    }

    pub fn resolving(window: Complex) -> WindowedComplex {
        WindowedComplex {
            window,
            rule: ExtendRule::Resolve,
        }
    }

    /// The start of a free resolution of a presented module: its free
    /// presentation in degrees `[-1, 0]` plus the kernel-cover rule.
    pub fn resolution_of(m: &PresentedModule) -> WindowedComplex {
        let window = Complex::two_term(-1, m.relations().clone());
        let window = if m.generators() > 0 && window.is_empty() {
            // free module: presentation has no relations
            Complex::stalk(m.ring().clone(), 0, m.generators())
        } else {
            window
        };
        WindowedComplex {
            window,
            rule: ExtendRule::Resolve,
        }
    }

    pub fn ring(&self) -> &Ring {
        self.window.ring()
    }

    pub fn rule(&self) -> ExtendRule {
        self.rule
    }

    pub fn window(&self) -> &Complex {
        &self.window
    }

    pub fn is_perfect(&self) -> bool {
        matches!(self.rule, ExtendRule::None)
    }

    /// Materializes the complex down to degree `lo` (at least).
    pub fn extend_to(&self, lo: i64) -> Result<Complex> {
        let mut c = self.window.clone();
        if matches!(self.rule, ExtendRule::None) || c.is_empty() {
            return Ok(c);
        }
        while c.lo() > lo {
            let d = c.diff(c.lo());
            let ker = linalg::prune_columns(&linalg::kernel_columns(&d)?)?;
            if ker.cols() == 0 {
                // resolution terminated; the window is the whole complex
                break;
            }
            let lo_new = c.lo() - 1;
            let mut ranks = vec![ker.cols()];
            ranks.extend((c.lo()..=c.hi()).map(|n| c.rank(n)));
            let mut diffs = vec![ker];
            diffs.extend((c.lo()..c.hi()).map(|n| c.diff(n)));
            c = Complex::new(c.ring().clone(), lo_new, ranks, diffs)?;
        }
        Ok(c)
    }
}
