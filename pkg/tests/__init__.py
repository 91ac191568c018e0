# Copyright 2022 Canonical Ltd.
# See LICENSE file for licensing details.

"""Tests for the K-theory of CGW categories."""
