#include "rci/spec.hpp"

namespace rci {

ValidationReport validate_instance(const RciInstance& instance,
                                   const ValidationOptions& options) {
    ValidationReport report;
    auto add = [&report](std::string msg) { report.problems.push_back(std::move(msg)); };

    if (!instance.alphabet) {
        add("instance has no alphabet");
    }
    if (!instance.hard) add("instance has no hard specification");
    if (!instance.soft) add("instance has no soft specification");

    if (instance.horizon < 0) {
        add("horizon must be non-negative");
    } else if (instance.horizon > options.max_horizon) {
        add("horizon " + std::to_string(instance.horizon) + " exceeds the configured limit of " +
            std::to_string(options.max_horizon));
    }

    if (instance.epsilon < 0 || instance.epsilon > 1) {
        add("epsilon " + fraction_string(instance.epsilon) + " is outside [0, 1]");
    }
    if (instance.rho <= 0) {
        add("rho " + fraction_string(instance.rho) +
            " is not positive; no distribution bounds every play in a probability-1 set by 0");
    } else if (instance.rho > 1) {
        add("rho " + fraction_string(instance.rho) + " is outside (0, 1]");
    }

    if (instance.alphabet && instance.hard && !(instance.hard->alphabet() == *instance.alphabet)) {
        add("hard specification alphabet differs from the instance alphabet");
    }
    if (instance.alphabet && instance.soft && !(instance.soft->alphabet() == *instance.alphabet)) {
        add("soft specification alphabet differs from the instance alphabet");
    }
    if (instance.hard && instance.soft &&
        !(instance.hard->alphabet() == instance.soft->alphabet())) {
        add("hard and soft specifications do not share an alphabet");
    }
    return report;
}

} // namespace rci
