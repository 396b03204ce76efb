#include "multfam/catalog.hpp"

namespace multfam {

Family parity_family()
{
    auto ring = AmbientRing::polynomial(1);
    auto t = adic(MonomialIdeal::maximal(ring));
    Asymptotics a;
    a.sub = shift(t, 2);
    a.super = t;
    return custom_family(
        ring,
        [ring](std::int64_t n) { return MonomialIdeal(ring, {{n % 2 == 1 ? n + 2 : n + 1}}); },
        "parity(t^{n+2} odd, t^{n+1} even)", std::move(a));
}

std::pair<Family, Family> rees_pair()
{
    auto J = adic(MonomialIdeal::maximal(AmbientRing::polynomial(1)));
    return {shift(J, 1), J};
}

std::pair<Family, Family> shifted_maximal_pair(int d)
{
    auto J = adic(MonomialIdeal::maximal(AmbientRing::polynomial(d)));
    return {shift(J, 1), J};
}

} // namespace multfam
