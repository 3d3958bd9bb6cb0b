#include "kernrl/agent.hpp"

#include "kernrl/errors.hpp"

namespace kernrl {

void Agent::notify_change(std::size_t) {
  throw InvalidConfig("agent was not built with restart support");
}

}  // namespace kernrl
