"""Vectorized floating-point evaluation of a form, its gradient and Hessian."""
from __future__ import annotations

import numpy as np

from .polyring import PolyForm, monomials

__all__ = ["NumericForm"]


def _exponents(d: int) -> np.ndarray:
    return np.array(monomials(d), dtype=np.int64).reshape(-1, 4)


class NumericForm:
    """``f`` with max-normalized complex coefficients, evaluated on batches of points ``(..., 4)``."""

    def __init__(self, f: PolyForm):
        if f.nvars != 4:
            raise ValueError("numeric evaluation is for forms on CP^3")
        self.degree = d = f.degree
        c = f.coeff_array()
        scale = np.max(np.abs(c))
        if scale == 0:
            raise ValueError("zero form")
        self.coeffs = c / scale
        self.exps = _exponents(d)
        self.grad_exps = _exponents(d - 1) if d >= 1 else None
        self.hess_exps = _exponents(d - 2) if d >= 2 else None
        normalized = PolyForm(d, tuple(self.coeffs))
        if d >= 1:
            parts = normalized.partials()
            self.grad_coeffs = np.stack([p.coeff_array() for p in parts], axis=1)
        if d >= 2:
            H = np.zeros((len(self.hess_exps), 4, 4), dtype=complex)
            for i, p in enumerate(parts):
                for k, q in enumerate(p.partials()):
                    H[:, i, k] = q.coeff_array()
            self.hess_coeffs = H

    @staticmethod
    def _monomials(Z: np.ndarray, exps: np.ndarray, d: int) -> np.ndarray:
        pw = np.ones(Z.shape + (d + 1,), dtype=complex)
        for k in range(1, d + 1):
            pw[..., k] = pw[..., k - 1] * Z
        out = np.ones(Z.shape[:-1] + (len(exps),), dtype=complex)
        for i in range(4):
            out = out * pw[..., i, :][..., exps[:, i]]
        return out

    def __call__(self, Z) -> np.ndarray:
        Z = np.asarray(Z, dtype=complex)
        return self._monomials(Z, self.exps, self.degree) @ self.coeffs

    def grad(self, Z) -> np.ndarray:
        Z = np.asarray(Z, dtype=complex)
        return self._monomials(Z, self.grad_exps, self.degree - 1) @ self.grad_coeffs

    def hess(self, Z) -> np.ndarray:
        Z = np.asarray(Z, dtype=complex)
        M = self._monomials(Z, self.hess_exps, self.degree - 2)
        return np.einsum("...n,nik->...ik", M, self.hess_coeffs)
