#include "bezout/examples.hpp"

namespace bezout {

CoeffSeries builtinExample(const std::string& name) {
    if (name == "constant") {
        CoeffSeries g(1, 2, 0, 1);
        g.coeffs[0] << 1.0, 0.0;
        return g;
    }
    if (name == "polynomial_1x2") {
        CoeffSeries g(1, 2, 0, 2);
        g.coeffs[0] << 1.0, 0.0;
        g.coeffs[1] << 1.0, -1.0;
        return g;
    }
    if (name == "square_identity") {
        return CoeffSeries::identity(2);
    }
    throw UnknownExample("unknown example '" + name + "'; available: constant, polynomial_1x2, square_identity");
}

std::vector<std::string> builtinExampleNames() {
    return {"constant", "polynomial_1x2", "square_identity"};
}

}  // namespace bezout
