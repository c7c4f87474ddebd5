#pragma once

// Linear model of the scheduling problem and the schedule <-> assignment
// mapping.
//
// Variable names: AJ_i_l_p_t, SJ_i_j_l_p_t, BJ_i_l_p_t, EJend_i_h_l_p_t,
// STJ_i_l_p_t, ENJ_i_l_p_t, AX_h_l_v, AP_k_p_t, SP_k_p_u_t, BP_k_p_t,
// EP_k_p_t, STP_k_p_t, ENP_k_p_t, with p and u global position ids and h = 0
// the dummy job.

#include <string_view>

#include "upms/core.hpp"
#include "upms/model.hpp"
#include "upms/validator.hpp"

namespace upms {

/// Step 2: every job exactly once, minimize total production time.
ModelIR build_step2_model(const Instance& instance);
/// Step 1: every job at most once, maximize the number of accepted jobs.
ModelIR build_step1_model(const Instance& instance);
ModelIR build_model(const Instance& instance, Mode mode);

/// Validator code of a model constraint, from its name prefix.
Code constraint_code(std::string_view constraint_name);

/// The nonzero variable values a schedule implies. Throws ScheduleError when
/// the schedule cannot be expressed (e.g. one job twice in a run).
Assignment encode_schedule(const Instance& instance, const Schedule& schedule);

/// Inverse of encode_schedule. Throws ScheduleError on non-integral
/// binaries or patterns that do not describe runs and routes (branching or
/// cyclic sequences, several personnel on one position).
Schedule decode_assignment(const Instance& instance,
                           const Assignment& assignment);

}  // namespace upms
