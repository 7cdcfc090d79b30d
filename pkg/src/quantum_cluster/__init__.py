"""Exact arithmetic and Poisson-structure checks for quantum cluster algebras."""

from .qring import ONE, ZERO, QScalar, qpow, scalar_arith
from .qtorus import (TorusElement, central_exponents, commutator, elem_mul, exact_div,
                     monomial_mul)
from .seeds import (Seed, enumerate_exchange_graph, frame_monomial, initial_seed,
                    mutate_lambda, mutate_matrix, mutate_seed, validate_seed)

__version__ = "0.1.0"
