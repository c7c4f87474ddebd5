"""Parallel machine scheduling with sequence-dependent setups and limited
personnel.

Instances and schedules are plain dicts in the same JSON layout the ``upms``
command-line tool reads and writes.
"""

import json

from . import _upms
from ._upms import FormatError, LpParseError, ScheduleError

__all__ = [
    "FormatError",
    "LpParseError",
    "ScheduleError",
    "check_assignment",
    "decode_solution",
    "encode_schedule",
    "exact_solve",
    "export_lp",
    "gantt",
    "generate_instance",
    "instance_file_name",
    "production_time",
    "solve",
    "sweep",
    "validate",
    "validate_params",
]


def _dump(obj):
    return obj if isinstance(obj, str) else json.dumps(obj)


def _gen_args(jobs, machines, periods, personnel, time_windows, eligibility, seed, positions):
    return (jobs, machines, periods, personnel, time_windows, eligibility, seed, positions)


def validate_params(jobs, machines, periods, personnel, *, time_windows=False,
                    eligibility=False, seed=1, positions=2):
    """Rule violations of a generator parameter set; empty when valid."""
    return _upms.validate_params(*_gen_args(jobs, machines, periods, personnel,
                                            time_windows, eligibility, seed, positions))


def generate_instance(jobs, machines, periods, personnel, *, time_windows=False,
                      eligibility=False, seed=1, positions=2):
    return json.loads(_upms.generate_instance(*_gen_args(
        jobs, machines, periods, personnel, time_windows, eligibility, seed, positions)))


def instance_file_name(jobs, machines, periods, personnel, *, time_windows=False,
                       eligibility=False, seed=1, positions=2):
    return _upms.instance_file_name(*_gen_args(jobs, machines, periods, personnel,
                                               time_windows, eligibility, seed, positions))


def solve(instance, *, backend="native", step1_time_limit=2700.0, step2_time_limit=1800.0,
          gap=0.05, search_budget=200000, export_dir=".", step1_solution="",
          step2_solution=""):
    """Two-step solve. Returns the report dict; ``report["schedule"]`` is the
    final schedule and ``report["step1_schedule"]`` the warm start."""
    return json.loads(_upms.solve(_dump(instance), backend, step1_time_limit,
                                  step2_time_limit, gap, search_budget, str(export_dir),
                                  str(step1_solution), str(step2_solution)))


def exact_solve(instance, mode="step2"):
    return json.loads(_upms.exact_solve(_dump(instance), mode))


def validate(instance, schedule, mode="step2"):
    """{"feasible": bool, "violations": [...]}"""
    return json.loads(_upms.validate(_dump(instance), _dump(schedule), mode))


def production_time(instance, schedule):
    total, processing, setup = _upms.production_time(_dump(instance), _dump(schedule))
    return {"total": total, "processing": processing, "setup": setup}


def export_lp(instance, mode="step2"):
    return _upms.export_lp(_dump(instance), mode)


def encode_schedule(instance, schedule):
    """Nonzero model variable values implied by the schedule."""
    return _upms.encode_schedule(_dump(instance), _dump(schedule))


def decode_solution(instance, text, mode="step2"):
    """Schedule from a ``name value`` solution file's text."""
    return json.loads(_upms.decode_solution(_dump(instance), mode, text))


def check_assignment(instance, values, mode="step2"):
    """Names of the model constraints `values` violates."""
    return _upms.check_assignment(_dump(instance), mode, dict(values))


def gantt(instance, schedule, format="svg"):
    return _upms.gantt(_dump(instance), _dump(schedule), format)


def sweep(instance, scenarios, *, step1_time_limit=2700.0, step2_time_limit=1800.0,
          gap=0.05, search_budget=200000, parallel=1):
    """Returns (rows, csv_text)."""
    rows, csv = _upms.sweep(_dump(instance), _dump(scenarios), step1_time_limit,
                            step2_time_limit, gap, search_budget, parallel)
    return json.loads(rows), csv
