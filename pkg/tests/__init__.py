"""Test modules for Quantum Ring"""
