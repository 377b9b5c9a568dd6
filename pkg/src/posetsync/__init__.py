"""Exact decision procedures for monotone single-source realizations of
stochastically monotone systems on tree-shaped posets, with certified
counterexamples when no realization exists."""

from .bijections import (PiecewiseTranslation, anchored_sync_bijection,
                         compose, compose_step, identity_translation,
                         make_translation, pair_interval_unions,
                         parse_translation, sync_bijection, translation_doc)
from .classw import (Classification, PathTree, WClass, build_path_tree,
                     classify, lower_star_class, upper_star_class)
from .counterexample import (Bundle, build_counterexample, build_system,
                             build_wstar_poset, bundle_doc,
                             check_event_certificate, enumerate_fences,
                             find_disconnecting, is_fence, select_fences)
from .errors import (CapExceeded, HypothesisError, InputError,
                     InternalCheckError, PosetSyncError)
from .measures import (DistFn, Measure, NodeWeights, df_leq, dist_fn,
                       envelope_weights, head_weights, interlaced,
                       measure_doc, mutually_interlaced, parse_measure,
                       parse_weights, stoch_leq, weights_doc)
from .oracle import (check_verdict, enumerate_monotone_maps,
                     realizably_monotone, strassen_pair, verdict_doc)
from .poset import Poset, parse_poset, poset_doc
from .rationals import format_rational, parse_rational
from .realize import (MonotoneSystem, Realization, check_monotone,
                      parse_realization, parse_system, realization_doc,
                      realize, realize_bounded, realize_sync, system_doc,
                      verify_realization)
from .sync import (BoundGraph, MAXIMALS, MINIMALS, SyncReport, descend,
                   enumerate_spanning_trees, interlaced_graph,
                   is_locally_connected, is_synchronizable, product_graph,
                   sync_reports)
from .transforms import (StepMap, build_inverse_transform, parse_step_map,
                         pushforward, step_map_doc)

__all__ = [name for name in dir() if not name.startswith("_")]
