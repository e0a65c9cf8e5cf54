use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::algebra::IntLaurent1;

/// A function `Z -> Z[t, t^-1]`, the space the quantum torus acts on.
pub trait DiscreteSequence: Send + Sync {
    fn eval(&self, n: i64) -> Arc<IntLaurent1>;
}

/// Write-once memo around a pure evaluation function. Concurrent misses may
/// compute the same value twice; the first insert wins.
pub struct MemoSequence<F> {
    compute: F,
    cache: RwLock<HashMap<i64, Arc<IntLaurent1>>>,
}

impl<F> MemoSequence<F>
where
    F: Fn(i64) -> IntLaurent1 + Send + Sync,
{
    pub fn new(compute: F) -> Self {
        Self { compute, cache: RwLock::new(HashMap::new()) }
    }
}

impl<F> DiscreteSequence for MemoSequence<F>
where
    F: Fn(i64) -> IntLaurent1 + Send + Sync,
{
    fn eval(&self, n: i64) -> Arc<IntLaurent1> {
        if let Some(v) = self.cache.read().unwrap().get(&n) {
            return Arc::clone(v);
        }
        let value = Arc::new((self.compute)(n));
        let mut cache = self.cache.write().unwrap();
        Arc::clone(cache.entry(n).or_insert(value))
    }
}

/// Unmemoized sequence from a closure.
pub struct FnSequence<F>(pub F);

impl<F> DiscreteSequence for FnSequence<F>
where
    F: Fn(i64) -> IntLaurent1 + Send + Sync,
{
    fn eval(&self, n: i64) -> Arc<IntLaurent1> {
        Arc::new((self.0)(n))
    }
}

impl<S: DiscreteSequence + ?Sized> DiscreteSequence for Arc<S> {
    fn eval(&self, n: i64) -> Arc<IntLaurent1> {
        (**self).eval(n)
    }
}

impl<S: DiscreteSequence + ?Sized> DiscreteSequence for &S {
    fn eval(&self, n: i64) -> Arc<IntLaurent1> {
        (**self).eval(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::atomic::{AtomicUsize, Ordering};

    #[test]
    fn memo_computes_once() {
        let calls = AtomicUsize::new(0);
        let seq = MemoSequence::new(|n| {
            calls.fetch_add(1, Ordering::SeqCst);
            IntLaurent1::monomial(1, n)
        });
        assert_eq!(*seq.eval(3), IntLaurent1::monomial(1, 3));
        assert_eq!(*seq.eval(3), IntLaurent1::monomial(1, 3));
        assert_eq!(calls.load(Ordering::SeqCst), 1);
    }
}
