#pragma once

#include <string>
#include <vector>

namespace unicrag {

enum class AttackObjective { MaliciousLink, HarmfulCommand, DenialOfService, Custom };

std::string to_string(AttackObjective objective);
AttackObjective attack_objective_from_string(const std::string& name);

// P^g plus the bookkeeping ASR needs: target_marker is the substring
// checked against model output, instructed_response is what a model that
// obeys the injected instruction emits (used by the mock adapter).
struct Payload {
    AttackObjective objective = AttackObjective::Custom;
    std::string variant;
    std::string text;
    std::string target_marker;
    std::string instructed_response;
};

const std::vector<Payload>& payload_library();

// Looks up a library payload; unknown variants raise an error listing the
// known variants for the objective.
Payload craft_payload(AttackObjective objective, const std::string& variant);

Payload custom_payload(const std::string& text, const std::string& target_marker,
                       const std::string& instructed_response);

}  // namespace unicrag
