use std::ops::Range;

use super::Semigroup;
use crate::error::{Error, Result};
use crate::verdict::Scope;

/// The first `size` elements E_N of a handle's enumeration.
#[derive(Debug, Clone)]
pub struct Window {
    handle: Semigroup,
    size: usize,
}

impl Window {
    pub fn new(handle: &Semigroup, size: usize) -> Result<Window> {
        if size == 0 {
            return Err(Error::EmptyWindow);
        }
        if let Some(order) = handle.order() {
            if size > order {
                return Err(Error::WindowTooLarge { size, order });
            }
        }
        Ok(Window {
            handle: handle.clone(),
            size,
        })
    }

    /// The whole carrier of a finite handle.
    pub fn full(handle: &Semigroup) -> Result<Window> {
        let n = handle.order().ok_or(Error::RequiresFinite { what: "a full window" })?;
        Window::new(handle, n)
    }

    /// Like [`Window::new`] but clamps the size to the order of finite handles.
    pub fn clamped(handle: &Semigroup, size: usize) -> Result<Window> {
        Window::new(handle, handle.order().map_or(size, |n| n.min(size)))
    }

    pub fn handle(&self) -> &Semigroup {
        &self.handle
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn elements(&self) -> Range<usize> {
        0..self.size
    }

    pub fn contains(&self, x: usize) -> bool {
        x < self.size
    }

    /// True when the window is the entire (finite) semigroup.
    pub fn is_full(&self) -> bool {
        self.handle.order() == Some(self.size)
    }

    /// Scope of a negative search over this window.
    pub fn scope(&self) -> Scope {
        if self.is_full() {
            Scope::Exhaustive
        } else {
            Scope::Window
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_degenerate_sizes() {
        let c = Semigroup::cyclic(4).unwrap();
        assert!(matches!(Window::new(&c, 0), Err(Error::EmptyWindow)));
        assert!(matches!(Window::new(&c, 5), Err(Error::WindowTooLarge { .. })));
        assert!(Window::full(&c).unwrap().is_full());
        assert!(!Window::new(&Semigroup::nat_plus(), 10).unwrap().is_full());
        assert_eq!(Window::clamped(&c, 100).unwrap().size(), 4);
    }
}
