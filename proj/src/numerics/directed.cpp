#include "equistate/numerics/directed.hpp"

#include "equistate/error.hpp"

namespace equistate {

DirectedReal::DirectedReal(Direction dir, std::vector<Rational> terms) : dir_(dir) {
  for (auto& t : terms) *this = push(t);
}

DirectedReal DirectedReal::push(const Rational& q) const {
  if (!terms_.empty()) {
    const Rational& prev = terms_.back();
    bool ok = dir_ == Direction::Lower ? q >= prev : q <= prev;
    if (!ok)
      throw Error(ErrorKind::MonotonicityViolation,
                  "pushing " + to_string(q) + " after " + to_string(prev));
  }
  DirectedReal r = *this;
  r.terms_.push_back(q);
  return r;
}

const Rational& DirectedReal::last() const {
  if (terms_.empty()) throw Error(ErrorKind::InvalidArgument, "empty directed sequence");
  return terms_.back();
}

}  // namespace equistate
