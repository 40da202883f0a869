#pragma once

#include <gtest/gtest.h>

#include "skintone/error.hpp"

// Code of the skintone::Error thrown by `fn`; records a failure if none is.
template <typename Fn>
skintone::ErrorCode error_code_of(Fn&& fn) {
  try {
    fn();
  } catch (const skintone::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no skintone::Error thrown";
  return skintone::ErrorCode::kInvalidArgument;
}
