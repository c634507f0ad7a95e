#pragma once

#include "sharpkit/error.hpp"

#include <doctest.h>

#include <exception>
#include <string>

// Error code thrown by f, failing the test if nothing is thrown.
template <class F>
sharpkit::Errc code_of(F&& f)
{
    try {
        f();
    } catch (const sharpkit::Error& e) {
        return e.code();
    }
    FAIL("expected a sharpkit::Error");
    return sharpkit::Errc::invalid_argument;
}

template <class F>
std::string what_of(F&& f)
{
    try {
        f();
    } catch (const std::exception& e) {
        return e.what();
    }
    return {};
}
