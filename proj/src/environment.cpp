#include "kernrl/environment.hpp"

#include "kernrl/errors.hpp"

namespace kernrl {

Point Environment::mean_next_state(std::size_t, std::size_t, const Point&, ActionId) const {
  throw UnsupportedOperation("environment does not expose mean dynamics");
}

}  // namespace kernrl
