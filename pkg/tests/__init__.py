"""Tests for cf-tailbound"""
