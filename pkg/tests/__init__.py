"""Tests unitaires des services, de la CLI et de l'API"""
