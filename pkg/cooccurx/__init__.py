from ._core import *
from .errors import *
from .gadgets import GadgetFamily, verify_claims
from .oracle import OracleResult, oracle_co, oracle_lmco
from .predecessor import PredecessorVariant, build_predecessor
from .scanner import MinimalCooccurrence, QueryProfile, scan_minimal
from .tokens import TokenMode, Vocabulary
