"""Test suite for the ncho toolkit"""
