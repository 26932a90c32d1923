"""Window mean-payoff solvers for Markov decision processes.

Thresholds and probabilities may be given as int, str ("3/4") or
fractions.Fraction; results come back as lists of vertex names.
"""

import json
from fractions import Fraction

from . import _wmp
from ._wmp import Mdp, StartOutsideRegion, WmpError

__all__ = [
    "Mdp",
    "WmpError",
    "StartOutsideRegion",
    "load",
    "parse",
    "chain",
    "sure_fwmp",
    "sure_dir_fwmp",
    "sure_bwmp",
    "almost_sure_fwmp",
    "almost_sure_bwmp",
    "almost_sure_buchi",
    "mec_decomposition",
    "sas_fwmp",
    "sas_bwmp",
    "sls_fwmp",
    "sls_bwmp",
    "pos_reach",
    "as_buchi_combined",
    "synthesize",
    "validate",
    "eval_lasso",
    "oracle_check",
    "compute_n",
    "streak_recurrence",
]


def _q(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    return str(x)


def load(path):
    return Mdp.load(str(path))


def parse(text):
    return Mdp.parse(text)


def chain(m, p, alpha, beta):
    return Mdp.chain(m, _q(p), _q(alpha), _q(beta))


def sure_fwmp(m, l, lam):
    return _wmp.sure_fwmp(m, l, _q(lam))


def sure_dir_fwmp(m, l, lam):
    return _wmp.sure_dir_fwmp(m, l, _q(lam))


def sure_bwmp(m, lam):
    return _wmp.sure_bwmp(m, _q(lam))


def almost_sure_fwmp(m, l, lam):
    return _wmp.almost_sure_fwmp(m, l, _q(lam))


def almost_sure_bwmp(m, lam):
    return _wmp.almost_sure_bwmp(m, _q(lam))


def almost_sure_buchi(m, target):
    return _wmp.almost_sure_buchi(m, list(target))


def mec_decomposition(m):
    return _wmp.mec_decomposition(m)


def sas_fwmp(m, l, alpha, beta, trace=False):
    region, tr = _wmp.sas_fwmp(m, l, _q(alpha), _q(beta))
    return (region, tr) if trace else region


def sas_bwmp(m, alpha, beta, trace=False):
    region, tr = _wmp.sas_bwmp(m, _q(alpha), _q(beta))
    return (region, tr) if trace else region


def sls_fwmp(m, l, alpha, beta):
    return _wmp.sls_fwmp(m, l, _q(alpha), _q(beta))


def sls_bwmp(m, alpha, beta):
    return _wmp.sls_bwmp(m, _q(alpha), _q(beta))


def pos_reach(m, l, alpha, target):
    """Region and the (src, dst, good) verdicts in the order they were made."""
    return _wmp.sure_dirfwmp_pos_reach(m, l, _q(alpha), list(target))


def as_buchi_combined(m, l, alpha, target):
    return _wmp.sure_dirfwmp_as_buchi(m, l, _q(alpha), list(target))


def synthesize(m, obj, start, l=1, alpha=0, beta=0, target=(), eps=Fraction(1, 10)):
    text = _wmp.synthesize(m, obj, start, l, _q(alpha), _q(beta), list(target), _q(eps))
    return json.loads(text)


def validate(m, strategy, start, claim, l=1, lam=0, target=(), threshold=1, steps=0):
    if not isinstance(strategy, str):
        strategy = json.dumps(strategy)
    out = _wmp.validate_strategy(m, strategy, start, claim, l, _q(lam), list(target), _q(threshold), steps)
    if out["probability"] is not None:
        out["probability"] = Fraction(out["probability"])
    return out


def eval_lasso(m, lasso, kind, l=1, lam=0):
    return _wmp.eval_lasso(m, lasso, kind, l, _q(lam))


def oracle_check(seed=7, count=200):
    return _wmp.run_oracle_suite(seed, count)


def compute_n(num_vertices, p_min, eps):
    return _wmp.compute_N(num_vertices, _q(p_min), _q(eps))


def streak_recurrence(m, p, n):
    return Fraction(_wmp.streak_recurrence(m, _q(p), n))
