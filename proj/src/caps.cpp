#include "clab/caps.hpp"

#include <cstdlib>
#include <sstream>

#include "clab/errors.hpp"

namespace clab {

void Caps::apply(const std::string& spec) {
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos) fail(Errc::ConfigError, "cap override needs key=value: " + item);
        const std::string key = item.substr(0, eq);
        std::size_t value = 0;
        try {
            value = std::stoull(item.substr(eq + 1));
        } catch (const std::exception&) {
            fail(Errc::ConfigError, "cap value is not an integer: " + item);
        }
        if (key == "bool_m") bool_m = value;
        else if (key == "class_bits") class_bits = value;
        else if (key == "dl_m") dl_m = value;
        else if (key == "mdnf_m") mdnf_m = value;
        else if (key == "mdnf_s") mdnf_s = value;
        else if (key == "mdnf_z") mdnf_z = value;
        else if (key == "memo_entries") memo_entries = value;
        else if (key == "exact_concepts") exact_concepts = value;
        else fail(Errc::ConfigError, "unknown cap '" + key + "'");
    }
}

Caps Caps::from_env() {
    Caps c;
    if (const char* env = std::getenv("CLAB_CAPS")) c.apply(env);
    return c;
}

Caps& caps() {
    static Caps instance = Caps::from_env();
    return instance;
}

}  // namespace clab
